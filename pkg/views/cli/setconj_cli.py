# -*- coding: utf-8 -*-
import itertools
import json
import logging
import multiprocessing
import sys
import time

import click

import shared.constants as constants
from logic.harness.instance import load_instance
from logic.harness.properties import PROPERTIES, run_property
from logic.harness.report import build_report, dumps, to_json, write_report
from logic.harness.tasks import run_task
from shared.errors import InstanceParseError, ResourceLimitError, SetConjError
from shared.message_prompts import show_critical_message, show_info_message, show_verdict_line


def configure_logging(verbose):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(format=constants.LOG_FORMAT, level=level, stream=sys.stderr)
    return level


def set_caps(fm_cap, cell_cap):
    if fm_cap is not None:
        constants.FM_CONSTRAINT_CAP = fm_cap
    if cell_cap is not None:
        constants.COMPLEMENT_CELL_CAP = cell_cap


def prepare_worker(level, fm_cap, cell_cap):
    # workers start from a fresh interpreter under forkserver, so logging and caps are set again
    logging.basicConfig(format=constants.LOG_FORMAT, level=level, stream=sys.stderr)
    set_caps(fm_cap, cell_cap)


def timed_task(index, instance, seed):
    start = time.perf_counter()
    outcome = run_task(index, instance, seed)
    return outcome, time.perf_counter() - start


def run_in_process_pool(function, items, shared_arguments, number_of_cpus, level, fm_cap, cell_cap):
    if number_of_cpus == -1:
        processes = None
    else:
        processes = number_of_cpus

    # macOS will crash due to a bug in libdispatch if you don't use 'forkserver'
    context = multiprocessing
    if "forkserver" in multiprocessing.get_all_start_methods():
        context = multiprocessing.get_context("forkserver")

    function_parameters = zip(items, *[itertools.repeat(argument) for argument in shared_arguments])
    with context.Pool(processes=processes, initializer=prepare_worker, initargs=(level, fm_cap, cell_cap)) as pool:
        return pool.starmap(function, function_parameters)


def run_all(function, items, shared_arguments, cpus, level, fm_cap, cell_cap):
    """
    Results come back in the order of ``items`` whatever the number of processes
    """
    if cpus == 1 or len(items) < 2:
        return [function(item, *shared_arguments) for item in items]
    return run_in_process_pool(function, items, shared_arguments, cpus, level, fm_cap, cell_cap)


def emit(report, out):
    if out:
        write_report(report, out)
        show_info_message("report written to {}".format(out))
    else:
        click.echo(dumps(report), nl=False)


@click.group()
def setconj():
    """
    Exact checks of set-valued conjugate duality on polyhedral instances
    """


@setconj.command()
@click.argument('instance_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--task', 'task_names', multiple=True, type=click.Choice(constants.TASK_NAMES), help='only run tasks of this kind (repeatable). Default is every task in the file')
@click.option('--seed', default=None, type=int, help='seed for the randomized parts. Default is the seed written in the instance')
@click.option('--out', default=None, type=click.Path(dir_okay=False), help='write the JSON report here instead of standard output')
@click.option('--cpus', default=1, help='number of CPU cores to use in parallel. -1 means "use all in system"')
@click.option('--timings', is_flag=True, default=False, help='add wall-clock seconds per task (the report is then no longer byte-identical between runs)')
@click.option('--fm-cap', default=None, type=int, help='cap on intermediate Fourier-Motzkin rows. Default is {}'.format(constants.FM_CONSTRAINT_CAP))
@click.option('--cell-cap', default=None, type=int, help='cap on complement cells. Default is {}'.format(constants.COMPLEMENT_CELL_CAP))
@click.option('-v', '--verbose', count=True, help='-v for task progress, -vv for algorithm traces')
def run(instance_file, task_names, seed, out, cpus, timings, fm_cap, cell_cap, verbose):
    """
    Run the tasks of an instance file and write the report
    """
    level = configure_logging(verbose)
    set_caps(fm_cap, cell_cap)
    try:
        instance = load_instance(instance_file)
    except InstanceParseError as e:
        show_critical_message("Parse error", "{}: {}".format(instance_file, e))
        sys.exit(constants.EXIT_PARSE_ERROR)

    seed = instance.seed if seed is None else seed
    indices = [i for i, task in enumerate(instance.tasks) if not task_names or task.kind in task_names]
    if not indices:
        show_info_message("no task of the requested kind in {}".format(instance_file))

    try:
        results = run_all(timed_task, indices, (instance, seed), cpus, level, fm_cap, cell_cap)
    except ResourceLimitError as e:
        show_critical_message("Resource limit", "{} exceeded its cap of {}".format(e.operation, e.limit))
        sys.exit(constants.EXIT_RESOURCE_LIMIT)
    except SetConjError as e:
        show_critical_message("Contract violation", str(e))
        sys.exit(constants.EXIT_CONTRACT_ERROR)

    outcomes = [outcome for outcome, _ in results]
    report = build_report(instance.name, seed, outcomes, [seconds for _, seconds in results] if timings else None)
    emit(report, out)

    for index, outcome in zip(indices, outcomes):
        if not outcome.passed:
            show_critical_message("Verification failed", "task {} ({}): {}".format(
                index, outcome.task, json.dumps(to_json(outcome.failure), sort_keys=True)))
            sys.exit(constants.EXIT_VERIFICATION_FAILED)
    sys.exit(constants.EXIT_OK)


@setconj.command()
@click.option('--seed', default=constants.DEFAULT_SEED, help='seed of the whole suite. Default is {}'.format(constants.DEFAULT_SEED))
@click.option('--iters', default=constants.DEFAULT_ITERS, help='scales every case count; {} runs the full counts. Default is {}'.format(constants.FULL_ITERS, constants.DEFAULT_ITERS))
@click.option('--cpus', default=1, help='number of CPU cores to use in parallel. -1 means "use all in system"')
@click.option('--only', multiple=True, type=click.Choice(list(PROPERTIES)), help='only run this property (repeatable)')
@click.option('--out', default=None, type=click.Path(dir_okay=False), help='also write the results as JSON')
@click.option('-v', '--verbose', count=True, help='-v for progress, -vv for algorithm traces')
def props(seed, iters, cpus, only, out, verbose):
    """
    Run the invariant suite on generated instances
    """
    level = configure_logging(verbose)
    names = list(only) or list(PROPERTIES)
    try:
        results = run_all(run_property, names, (seed, iters), cpus, level, None, None)
    except ResourceLimitError as e:
        show_critical_message("Resource limit", "{} exceeded its cap of {}".format(e.operation, e.limit))
        sys.exit(constants.EXIT_RESOURCE_LIMIT)
    except SetConjError as e:
        show_critical_message("Contract violation", str(e))
        sys.exit(constants.EXIT_CONTRACT_ERROR)

    for result in results:
        show_verdict_line(result.name, result.passed, "{} cases, {} checks".format(result.cases, result.checked))
    if out:
        write_report({"seed": seed, "iters": iters, "passed": all(r.passed for r in results),
                      "properties": to_json(results)}, out)

    for result in results:
        if not result.passed:
            show_critical_message("Counterexample", "{} (property seed {}): {}".format(
                result.name, result.seed, json.dumps(to_json(result.first_failure), sort_keys=True)))
            sys.exit(constants.EXIT_VERIFICATION_FAILED)
    sys.exit(constants.EXIT_OK)


if __name__ == "__main__":
    setconj()
