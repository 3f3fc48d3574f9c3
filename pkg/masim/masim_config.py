# Following design pattern for singleton variables from here:
# https://docs.python.org/3/faq/programming.html#how-do-i-share-global-variables-across-modules
import logging

from masim.sim.defaults import Defaults

logger = logging.getLogger(__name__)

configs = Defaults()
