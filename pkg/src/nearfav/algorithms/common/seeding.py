# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "03 March 2026"

Trial streams: every trial owns a 64-bit seed derived from (master seed, scale, trial)
so that results do not depend on which worker ran the trial or when.

"""

import numpy as np


MASK64 = (1 << 64) - 1


def trial_seed(master_seed, trial, scale=0):
    ss = np.random.SeedSequence(entropy=int(master_seed) & MASK64, spawn_key=(int(scale), int(trial)))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_generator(seed):
    # Philox is counter-based: the stream is a pure function of the seed
    return np.random.Generator(np.random.Philox(int(seed) & MASK64))
