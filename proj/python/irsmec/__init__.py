from ._irsmec import *  # noqa: F401,F403
from ._irsmec import __doc__  # noqa: F401
