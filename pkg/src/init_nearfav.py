# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "08 April 2026"
@modified: "20 May 2026"

Usage:
    $python3 init_nearfav.py simulate --scales 64,128,256,512 -a 0.1 -b 0.5 -t 200 -o ../results
    $python3 init_nearfav.py exponents --grid 10
    $python3 init_nearfav.py verify-exponents -o ../results
    $python3 init_nearfav.py excursions -c excursions.ini
    $python3 init_nearfav.py gff-sample --scales 32 -t 5 -o ../results
    $python3 init_nearfav.py report -o ../results

Description:
    command -> simulate | exponents | excursions | verify-{combinatorics,potential,exponents,gff,walk,points,trend}
               | gff-sample | report
    c -> configuration file ([experiment] and [schedule] sections)
    a -> alpha, b -> beta, j -> tuple order, t -> trials per scale
    k -> point set kind (favorite | truncated | late | high)
    m -> number of worker processes (0: all available cores)

Exit codes: 0 success, 1 verification failure, 2 configuration error.

"""

import csv
import logging
import os
import sys
import time
from optparse import OptionParser
from nearfav import __version__
from nearfav.harness.config import ExperimentConfig, ConfigError
from nearfav.harness.experiment import Experiment
from nearfav.harness.excursion_study import ExcursionStudy
from nearfav.harness.manifest import RunManifest, is_complete
from nearfav.harness.verify import verify, SUITES
from nearfav.algorithms import exponents as ex
from nearfav.algorithms.gff import build_covariance, sample
from nearfav.algorithms.common.seeding import trial_seed
from nearfav.algorithms.common.hdf5.store_h5 import FieldStore_h5
from nearfav.algorithms.walk_engine import StepCapExceeded


COMMANDS = ('simulate', 'exponents', 'excursions', 'gff-sample', 'report') + tuple('verify-' + s for s in SUITES)


def init_simulate(config):
    start = time.time()
    exp = Experiment(config)
    manifest = exp.run_experiment()
    wr_line = "Run-time: " + str(time.time() - start) + " seconds\n"
    wr_line += "Experiment: tuple counts of " + config.kind + " points\n"
    wr_line += "Version: " + __version__ + '\n'
    wr_line += "Scales: " + str(config.scales) + '\n'
    wr_line += "Alpha: " + str(config.alpha) + '\n'
    wr_line += "Beta: " + str(config.beta) + '\n'
    wr_line += "Tuple order j: " + str(config.j) + ("" if config.diagonal else " (no repeated members)") + '\n'
    wr_line += "Trials per scale: " + str(config.trials) + '\n'
    wr_line += "Master seed: " + str(config.seed) + '\n'
    wr_line += "Multi-core execution: " + str(exp.msg_para) + '\n'
    wr_line += "Number of cores: " + str(exp.cores) + '\n'
    wr_line += "Estimator: " + config.estimator + '\n\n'
    wr_line += report_body(manifest.to_dict())
    return wr_line


def report_body(obj):
    wr_line = "n, trials, mean count, std count, mean set size\n"
    for agg in obj["aggregates"]:
        wr_line += (str(agg["n"]) + ', ' + str(agg["trials"]) + ', ' + str(agg["mean_count"]) + ', ' +
                    str(agg["std_count"]) + ', ' + str(agg["mean_set_size"]) + '\n')
    fit = obj.get("fit")
    if fit:
        wr_line += "\nFitted exponent: " + str(fit["slope"]) + " (stderr " + str(fit["stderr"]) + ")\n"
        if fit["excluded_scales"]:
            wr_line += "Scales excluded (zero counts): " + str(fit["excluded_scales"]) + '\n'
    if obj.get("reference_exponent") is not None:
        wr_line += "Reference exponent: " + str(obj["reference_exponent"]) + '\n'
    for note in obj.get("notes", []):
        wr_line += "Note: " + note + '\n'
    wr_line += '\n\n --- end --- \n\n '
    return wr_line


def init_report(config):
    path = os.path.join(config.out, 'manifest.json')
    if not os.path.exists(path):
        raise ConfigError("Config Error: no manifest at " + path)
    obj = RunManifest.load(path)
    wr_line = "Report of run started " + str(obj["started"]) + ", finished " + str(obj["finished"]) + '\n'
    wr_line += "Version: " + str(obj["version"]) + '\n'
    wr_line += "Configuration: " + str(obj["config"]) + '\n'
    if not is_complete(os.path.join(config.out, 'results.csv')):
        wr_line += "Results file is incomplete\n"
    wr_line += '\n'
    wr_line += report_body(obj)
    return wr_line


def _float_list(text):
    return [float(s) for s in text.split(',') if s.strip()] if text else None


def init_exponents(config, grid, alphas=None, betas=None):
    axis = ex.grid_axis(grid)
    rows = ex.duality_grid(grid, alphas if alphas else axis, betas if betas else axis)
    wr_line = ','.join(ex.DUALITY_HEADER) + '\n'
    for row in rows:
        wr_line += ','.join(str(v) for v in row) + '\n'
    os.makedirs(config.out, exist_ok=True)
    with open(os.path.join(config.out, 'exponents.csv'), 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(ex.DUALITY_HEADER)
        writer.writerows(rows)
    return wr_line


def init_excursions(config):
    start = time.time()
    study = ExcursionStudy(config)
    summary = study.run_study()
    path = study.write(summary)
    wr_line = "Run-time: " + str(time.time() - start) + " seconds\n"
    wr_line += "Excursion diagnostic at n = " + str(summary.n) + ", centre (0, 0)\n"
    wr_line += "Version: " + __version__ + '\n'
    wr_line += "Schedule: " + config.schedule_kind + " radii " + str(summary.schedule["radii"]) + '\n'
    wr_line += "Alpha: " + str(config.alpha) + ", gamma: " + str(summary.gamma) + '\n'
    wr_line += "Seeds: " + str(summary.trials) + '\n'
    wr_line += "Multi-core execution: " + str(study.msg_para) + '\n'
    wr_line += "Number of cores: " + str(study.cores) + '\n\n'
    wr_line += "level, pass frequency, mean count, reference\n"
    for k, f, m, r in zip(summary.levels, summary.level_pass_frequency, summary.mean_counts, summary.references):
        wr_line += str(k) + ', ' + str(f) + ', ' + str(m) + ', ' + str(r) + '\n'
    lo, hi = summary.interval
    wr_line += ("\nSuccessful runs: " + str(summary.successes) + " of " + str(summary.trials) +
                ", frequency " + str(summary.frequency) + ", " + str(int(100 * summary.confidence)) +
                "% Wilson interval [" + str(lo) + ", " + str(hi) + "]\n")
    for note in summary.notes:
        wr_line += "Note: " + note + '\n'
    wr_line += "Report: " + path + '\n'
    return wr_line


def init_verify(config, suite, quick):
    os.makedirs(config.out, exist_ok=True)
    start = time.time()
    verdict = verify(suite, quick=quick, seed=config.seed, out=config.out, workers=config.workers)
    verdict.params["config"] = config.to_dict()
    verdict.save(os.path.join(config.out, 'verdict.json'))
    wr_line = "Run-time: " + str(time.time() - start) + " seconds\n"
    wr_line += "Verification suite: " + suite + (" (quick)" if quick else "") + '\n'
    for check in verdict.checks:
        wr_line += ("PASS " if check["passed"] else "FAIL ") + check["name"] + '\n'
    wr_line += "Verdict: " + ("passed" if verdict.passed else "failed") + '\n'
    return wr_line, verdict.passed


def init_gff_sample(config):
    n = config.scales[0]
    os.makedirs(config.out, exist_ok=True)
    factor = build_covariance(n)
    store = FieldStore_h5(os.path.join(config.out, 'gff.h5'))
    wr_line = "GFF on the box interior {1.." + str(n - 1) + "}^2, covariance (I - P)^-1\n"
    wr_line += "Factor residual: " + str(factor.residual) + '\n'
    for t in range(config.trials):
        s = sample(factor, trial_seed(config.seed, t, n))
        stem = os.path.join(config.out, 'gff_n' + str(n) + '_s' + str(s.seed))
        with open(stem + '.bin', 'wb') as f:
            f.write(s.to_bytes())
        with open(stem + '.json', 'w') as f:
            f.write(s.header())
        s.save_h5(store)
        wr_line += "sample " + str(t) + ": seed " + str(s.seed) + ", max " + str(s.max()) + '\n'
    return wr_line


def build_config(options):
    config = ExperimentConfig()
    if options.config:
        config = ExperimentConfig.from_file(options.config)
    config.with_overrides(scales=options.scales, alpha=options.alpha, beta=options.beta, j=options.j,
                          trials=options.trials, seed=options.seed, workers=options.workers,
                          out=options.out, kind=options.kind, estimator=options.estimator)
    if options.noDiagonal:
        config.diagonal = False
    return config.validate()


def main(argv):
    optparser = OptionParser(usage="%prog COMMAND [options]")
    optparser.add_option('-c', '--config', dest='config', help='configuration file', default=None, type='string')
    optparser.add_option('--seed', dest='seed', help='master seed (unsigned 64-bit)', default=None, type='int')
    optparser.add_option('-m', '--workers', dest='workers', help='number of worker processes', default=None, type='int')
    optparser.add_option('-o', '--out', dest='out', help='output directory', default=None, type='string')
    optparser.add_option('--scales', dest='scales', help='comma separated scales n', default=None, type='string')
    optparser.add_option('-a', '--alpha', dest='alpha', help='level alpha', default=None, type='float')
    optparser.add_option('-b', '--beta', dest='beta', help='distance exponent beta', default=None, type='float')
    optparser.add_option('-j', '--j', dest='j', help='tuple order', default=None, type='int')
    optparser.add_option('-t', '--trials', dest='trials', help='trials per scale', default=None, type='int')
    optparser.add_option('-k', '--kind', dest='kind', help='point set kind', default=None, type='string')
    optparser.add_option('-e', '--estimator', dest='estimator', help='mean | single', default=None, type='string')
    optparser.add_option('--no-diagonal', dest='noDiagonal', help='drop tuples with repeated members',
                         default=False, action='store_true')
    optparser.add_option('-g', '--grid', dest='grid', help='exponent grid size', default=10, type='int')
    optparser.add_option('--alphas', dest='alphas', help='exponent table alphas', default=None, type='string')
    optparser.add_option('--betas', dest='betas', help='exponent table betas', default=None, type='string')
    optparser.add_option('-q', '--quick', dest='quick', help='reduced-size verification', default=False,
                         action='store_true')
    optparser.add_option('-v', '--verbose', dest='verbose', help='log progress', default=False, action='store_true')
    (options, args) = optparser.parse_args(argv)

    logging.basicConfig(level=logging.INFO if options.verbose else logging.WARNING,
                        format='%(asctime)s %(name)s %(levelname)s: %(message)s')
    if len(args) != 1 or args[0] not in COMMANDS:
        print("Config Error: command must be one of " + ", ".join(COMMANDS))
        return 2
    command = args[0]
    try:
        config = build_config(options)
        config.command = command
        if command == 'simulate':
            wr_line = init_simulate(config)
        elif command == 'exponents':
            wr_line = init_exponents(config, options.grid, _float_list(options.alphas), _float_list(options.betas))
        elif command == 'excursions':
            wr_line = init_excursions(config)
        elif command == 'gff-sample':
            wr_line = init_gff_sample(config)
        elif command == 'report':
            wr_line = init_report(config)
        else:
            wr_line, passed = init_verify(config, command[len('verify-'):], options.quick)
            print(wr_line)
            return 0 if passed else 1
        print(wr_line)
        return 0
    except ConfigError as error:
        print(error)
        return 2
    except ValueError as error:
        print("Config Error: " + str(error))
        return 2
    except (ArithmeticError, StepCapExceeded) as error:
        print("Failed: " + str(error))
        return 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
