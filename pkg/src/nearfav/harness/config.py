# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "01 April 2026"
@modified: "17 May 2026"

ExperimentConfig: one run of the laboratory, read from an INI-style file

    [experiment]
    scales = 64, 128, 256, 512
    alpha = 0.1
    beta = 0.5
    j = 2
    trials = 200
    seed = 20260401
    workers = 0
    out = results
    kind = favorite
    estimator = mean

    [schedule]
    kind = geometric
    levels = 5
    base = 4
    ratio = 4
    gamma = 1.0

and then overridden by command-line options.

"""

import configparser
from dataclasses import dataclass, field, asdict
from ..algorithms.point_sets import KINDS


ESTIMATORS = ('mean', 'single')


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    command: str = 'simulate'
    scales: list = field(default_factory=lambda: [64, 128, 256])
    alpha: float = 0.1
    beta: float = 0.5
    j: int = 2
    trials: int = 1
    seed: int = 0
    workers: int = 1
    out: str = 'results'
    kind: str = 'favorite'
    estimator: str = 'mean'
    diagonal: bool = True
    schedule_kind: str = 'geometric'
    schedule_levels: int = 5
    schedule_base: float = 4.0
    schedule_ratio: float = 4.0
    gamma: float = 1.0

    @staticmethod
    def parse_scales(text):
        try:
            return [int(s) for s in str(text).replace(';', ',').split(',') if s.strip()]
        except ValueError:
            raise ConfigError("Config Error: scales must be a comma separated list of integers")

    @staticmethod
    def from_file(path):
        parser = configparser.ConfigParser()
        if not parser.read(path):
            raise ConfigError("Config Error: cannot read " + str(path))
        cfg = ExperimentConfig()
        try:
            if parser.has_section('experiment'):
                sec = parser['experiment']
                if 'scales' in sec:
                    cfg.scales = ExperimentConfig.parse_scales(sec['scales'])
                cfg.alpha = sec.getfloat('alpha', cfg.alpha)
                cfg.beta = sec.getfloat('beta', cfg.beta)
                cfg.j = sec.getint('j', cfg.j)
                cfg.trials = sec.getint('trials', cfg.trials)
                cfg.seed = sec.getint('seed', cfg.seed)
                cfg.workers = sec.getint('workers', cfg.workers)
                cfg.out = sec.get('out', cfg.out)
                cfg.kind = sec.get('kind', cfg.kind)
                cfg.estimator = sec.get('estimator', cfg.estimator)
                cfg.diagonal = sec.getboolean('diagonal', cfg.diagonal)
            if parser.has_section('schedule'):
                sec = parser['schedule']
                cfg.schedule_kind = sec.get('kind', cfg.schedule_kind)
                cfg.schedule_levels = sec.getint('levels', cfg.schedule_levels)
                cfg.schedule_base = sec.getfloat('base', cfg.schedule_base)
                cfg.schedule_ratio = sec.getfloat('ratio', cfg.schedule_ratio)
                cfg.gamma = sec.getfloat('gamma', cfg.gamma)
        except ValueError as error:
            raise ConfigError("Config Error: " + str(error))
        return cfg

    def with_overrides(self, **options):
        for key, value in options.items():
            if value is None:
                continue
            if not hasattr(self, key):
                raise ConfigError("Config Error: unknown option " + key)
            if key == 'scales' and isinstance(value, str):
                value = ExperimentConfig.parse_scales(value)
            setattr(self, key, value)
        return self

    def validate(self):
        if self.trials < 1:
            raise ConfigError("Config Error: trials must be >= 1")
        if not self.scales:
            raise ConfigError("Config Error: at least one scale is required")
        if any(b <= a for a, b in zip(self.scales, self.scales[1:])):
            raise ConfigError("Config Error: scales must be strictly increasing")
        if not (0 < self.alpha < 1):
            raise ConfigError("Config Error: alpha must lie in (0, 1)")
        if not (0 < self.beta < 1):
            raise ConfigError("Config Error: beta must lie in (0, 1)")
        if self.j < 2:
            raise ConfigError("Config Error: j must be >= 2")
        if self.kind not in KINDS:
            raise ConfigError("Config Error: kind must be one of " + ", ".join(KINDS))
        if self.estimator not in ESTIMATORS:
            raise ConfigError("Config Error: estimator must be mean or single")
        if self.kind in ('favorite', 'truncated') and self.scales[0] < 3:
            raise ConfigError("Config Error: favorite points need n >= 3")
        if self.kind == 'late' and self.scales[0] < 2:
            raise ConfigError("Config Error: torus side must be >= 2")
        if self.kind == 'high' and not (2 <= self.scales[0] and self.scales[-1] <= 128):
            raise ConfigError("Config Error: GFF box side must lie in [2, 128]")
        if self.seed < 0 or self.seed >= 1 << 64:
            raise ConfigError("Config Error: seed must be an unsigned 64-bit integer")
        return self

    def to_dict(self):
        return asdict(self)
