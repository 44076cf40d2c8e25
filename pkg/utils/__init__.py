from utils import ffield
from utils import polynomial
from utils import groebner
from utils import linalg
from utils import lie_algebra
from utils import read_input
