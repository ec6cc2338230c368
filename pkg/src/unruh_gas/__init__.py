from .utils import *
from .gases import *
from .numerics import *
from .channels import *
from .simulation import *
