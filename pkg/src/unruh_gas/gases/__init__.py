from .data import *
from .creation import *
