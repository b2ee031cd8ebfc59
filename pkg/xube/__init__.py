#--------------------------------------------------------------------------------------------------#
# xube Library                                                                                     #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Learns heuristic functions for pathfinding domains with approximate value iteration and          #
# Q-learning, and solves problem instances with batched weighted A*/Q* and beam search             #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Settings                                                                                         #
#--------------------------------------------------------------------------------------------------#
from ._version import __version__

# from xube import domain
# from xube import sliding_tile
# from xube import grid
# from xube import search
# from xube import approx
# from xube import checkpoint
# from xube import targets
# from xube import supervised
# from xube import training
# from xube import records
# from xube import registry
# from xube import cli
