"""
Problem descriptors ("dtf:k=3,m=5", "cluspt:<path>") and their translation into task definitions.
"""
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional

from evolution import cluspt, dtf
from evolution.exceptions import ConfigurationError
from evolution.population import TaskDefinition

INSTANCES_DIR = Path(__file__).resolve().parent / 'instances'
INSTANCE_SUFFIX = '.clu'


@dataclass(frozen=True)
class ProblemDescriptor:
    kind: str
    label: str
    trap: Optional[dtf.TrapSpec] = None
    path: Optional[Path] = None


def resolve_instance_path(name):
    """Find an instance file by path, or by name among the bundled instances."""
    for candidate in (Path(name), INSTANCES_DIR / name, INSTANCES_DIR / f'{name}{INSTANCE_SUFFIX}'):
        if candidate.is_file():
            return candidate
    raise ConfigurationError(f"No CluSPT instance found at {name!r}")


def parse_descriptor(text):
    kind, sep, rest = text.strip().partition(':')
    kind = kind.lower()
    if not sep or not rest:
        raise ConfigurationError(f"Problem descriptor {text!r} must look like 'dtf:k=3,m=5' or 'cluspt:<path>'")
    if kind == 'dtf':
        params = {}
        for item in rest.split(','):
            key, sep, value = item.partition('=')
            if not sep or key.strip() not in ('k', 'm'):
                raise ConfigurationError(f"Unknown DTF parameter {item!r} in {text!r}")
            try:
                params[key.strip()] = int(value)
            except ValueError:
                raise ConfigurationError(f"DTF parameter {key.strip()} must be an integer, got {value!r}") from None
        if set(params) != {'k', 'm'}:
            raise ConfigurationError(f"DTF descriptor {text!r} needs both k and m")
        spec = dtf.TrapSpec(params['k'], params['m'])
        return ProblemDescriptor('dtf', spec.label, trap=spec)
    if kind == 'cluspt':
        return ProblemDescriptor('cluspt', f'cluspt:{rest}', path=resolve_instance_path(rest))
    raise ConfigurationError(f"Unknown problem kind {kind!r} in {text!r}")


@lru_cache(maxsize=32)
def _load_graph(path):
    return cluspt.load_instance(path)


def make_task(descriptor, task_id):
    if isinstance(descriptor, str):
        descriptor = parse_descriptor(descriptor)
    if descriptor.kind == 'dtf':
        return TaskDefinition(task_id=task_id,
                              dimension=descriptor.trap.length,
                              alphabet_size=2,
                              objective=dtf.TrapObjective(descriptor.trap),
                              known_optimum=0.0,
                              name=descriptor.label)
    graph = _load_graph(descriptor.path)
    return TaskDefinition(task_id=task_id,
                          dimension=graph.n,
                          alphabet_size=max(graph.n, 2),
                          objective=cluspt.ClusteredTreeObjective(graph),
                          known_optimum=graph.known_optimum,
                          name=descriptor.label)


def build_tasks(descriptors):
    if not descriptors:
        raise ConfigurationError("At least one problem descriptor is required")
    return [make_task(descriptor, task_id) for task_id, descriptor in enumerate(descriptors, start=1)]
