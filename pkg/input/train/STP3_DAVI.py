#--------------------------------------------------------------------------------------------------#
# STP3_DAVI.py                                                                                     #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Training preset for xube train --preset STP3_DAVI                                                #
# 8-puzzle, heuristic-v MLP trained with value-iteration targets, HER and an adaptive curriculum   #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.24: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#
domain = "stp3"                 # Domain | str
arch   = "mlp:hidden=400-200"   # Approximator (162-400-200-1 on the one-hot encoding) | str
algo   = "graph_v"              # Training search | str
head   = "v"                    # Heuristic head | str

batch_size  = 500   # Examples per gradient step (N) | int
update_itrs = 50    # Gradient steps per update check (U) | int
search_itrs = 100   # Search iterations per instance (I) | int
lr          = 1e-3  # Adam learning rate | float

k_max      = 30     # Maximum random-walk length | int
adaptive_k = True   # Double K when >= 50 % of instances are solved | bool
her        = True   # Hindsight relabelling of failed searches | bool
lhbl       = False  # Bellman backup over the whole search tree | bool
lhbl_node_estimates = False  # With lhbl, compare internal nodes with untraversed edges | bool
replay     = 0      # Update checks kept in the replay buffer (0 = current only) | int

target_update     = "always"    # "always" or "loss:<threshold>" | str
guidance          = "target"    # Search guidance: "target" or "live" | str
max_update_checks = 60          # Update checks | int
workers           = 4           # Data-generation processes | int
seed              = 0           # Run seed | int
