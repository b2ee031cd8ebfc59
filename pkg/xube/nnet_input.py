#--------------------------------------------------------------------------------------------------#
# nnet_input.py                                                                                    #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Encoder contract: converts (state, goal) pairs to rows of a float32 matrix for approximators     #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from abc import ABC, abstractmethod
from collections.abc import Sequence

import numpy as np

#--------------------------------------------------------------------------------------------------#
# Main                                                                                             #
#--------------------------------------------------------------------------------------------------#
class NNetInput(ABC):
    """One encoder per (domain, architecture). ``input_dim`` is fixed for the domain instance."""

    @property
    @abstractmethod
    def input_dim(self) -> int:
        ...

    @abstractmethod
    def encode(self, states: Sequence, goals: Sequence) -> np.ndarray:
        """Return a float32 array of shape (len(states), input_dim)."""

    def encode_one(self, state, goal) -> np.ndarray:
        return self.encode([state], [goal])[0]


def encode_state_goal(domain, state, goal) -> np.ndarray:
    """Encode one pair with the domain's default encoder (``domain.default_encoder()``)."""
    return domain.default_encoder().encode_one(state, goal)
