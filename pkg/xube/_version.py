#--------------------------------------------------------------------------------------------------#
# xube Library : Version setting                                                                   #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Learned heuristic functions for pathfinding domains : Version setting                            #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Version                                                                                          #
#--------------------------------------------------------------------------------------------------#
__version__ = "0.3.1"
