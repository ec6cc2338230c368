from .events import *
from .collisions import *
from .system import HardSphereSystem
from .runner import *
