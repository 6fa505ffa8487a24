from ._monsterlab import *  # noqa: F401,F403
from ._monsterlab import __doc__  # noqa: F401
