# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.1"
@created: "5 November 2019"
@modified: "03 March 2026"

Core discovery for the trial pool. On a SLURM allocation the granted CPUs win over the
host count (SLURM_JOB_CPUS_PER_NODE may read "16" or "16(x2)").

"""

import os
import multiprocessing as mp


class Profile:

    @staticmethod
    def get_num_cores():
        num_cores = Profile.get_slurm_cores()
        if not num_cores:
            num_cores = mp.cpu_count()
        return num_cores

    @staticmethod
    def get_slurm_cores():
        raw = os.environ.get('SLURM_JOB_CPUS_PER_NODE')
        if raw is None:
            return False
        try:
            return int(raw)
        except ValueError:
            try:
                cpus, rest = raw.split('(', 1)
                nodes = rest.split('x', 1)[1].split(')', 1)[0]
                return int(cpus) * int(nodes)
            except (ValueError, IndexError):
                return False

    @staticmethod
    def resolve_workers(workers):
        if workers is None or workers < 1:
            return Profile.get_num_cores()
        return int(workers)
