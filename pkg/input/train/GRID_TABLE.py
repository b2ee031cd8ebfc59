#--------------------------------------------------------------------------------------------------#
# GRID_TABLE.py                                                                                    #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Training preset for xube train --preset GRID_TABLE                                               #
# 4x4 weighted grid, exact lookup table, learning rate 1 (targets are copied into the table)       #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.24: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#
domain = "grid:width=4,height=4,max_terrain_weight=3,seed=1"   # Domain | str
arch   = "table"                                               # Approximator | str
algo   = "graph_v"                                             # Training search | str
head   = "v"                                                   # Heuristic head | str

batch_size  = 200   # Examples per gradient step (N) | int
update_itrs = 10    # Gradient steps per update check (U) | int
search_itrs = 20    # Search iterations per instance (I) | int
lr          = 1.0   # Table step size | float
k_max       = 8     # Maximum random-walk length | int

max_update_checks = 30  # Update checks | int
seed              = 0   # Run seed | int
