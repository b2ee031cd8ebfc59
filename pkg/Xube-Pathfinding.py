#--------------------------------------------------------------------------------------------------#
# Xube Pathfinding                                                                                 #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Launcher of the xube command-line tool from a checkout (no installation needed).                 #
# Learns heuristic functions for pathfinding domains and solves problem instances with them        #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.23: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#
# usage:                                                                                           #
#   python Xube-Pathfinding.py domain-info                                                         #
#   python Xube-Pathfinding.py train --preset STP3_DAVI --out output/stp3                          #
#   python Xube-Pathfinding.py solve --domain stp3 --insts insts.jsonl \                           #
#                                    --ckpt output/stp3/model.ckpt --algo graph_v --out res.jsonl  #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
# Default Library
from pathlib import Path
import sys

#--------------------------------------------------------------------------------------------------#
# PATH                                                                                             #
#--------------------------------------------------------------------------------------------------#
BASE_DIR = Path(__file__).resolve().parent  # repo root

sys.path.insert(0, str(BASE_DIR))

# Custom library
from xube.cli import main

#--------------------------------------------------------------------------------------------------#
# Main                                                                                             #
#--------------------------------------------------------------------------------------------------#
if __name__ == "__main__":
    main()
