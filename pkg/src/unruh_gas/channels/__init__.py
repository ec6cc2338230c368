from .base import BaseChannel
from .unruh import *
from .mdw import *
from .randomization import *
