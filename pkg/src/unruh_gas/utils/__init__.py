from .constants import *
from .errors import *
from .logging import log
from .parsing import parse_var, parse_vars
