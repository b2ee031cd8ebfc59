#--------------------------------------------------------------------------------------------------#
# STP3_SUPERVISED.py                                                                               #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Training preset for xube train --preset STP3_SUPERVISED                                          #
# 8-puzzle, heuristic-v MLP fitted to reverse random-walk path costs (no bootstrapping)            #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.24: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#
domain = "stp3"                 # Domain | str
arch   = "mlp:hidden=400-200"   # Approximator | str
algo   = "sup_rev_v"            # Supervised reverse walks | str
head   = "v"                    # Heuristic head | str

batch_size  = 500   # Examples per gradient step (N) | int
update_itrs = 50    # Gradient steps per update check (U) | int
search_itrs = 30    # Sets the walks per update check (N * U / I) | int
lr          = 1e-3  # Adam learning rate | float
k_max       = 30    # Maximum random-walk length | int

max_update_checks = 40  # Update checks | int
workers           = 1   # Data-generation processes | int
seed              = 0   # Run seed | int
