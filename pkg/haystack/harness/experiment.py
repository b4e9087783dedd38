"""
Experiment grids.

An ExperimentSpec names the (arch, d, n_total, seed) grid of a sweep and
the training template shared by every cell. Cells are enumerated in the
order (arch, d, n_total, seed), each ascending, which is also the sort
order of the result CSV.
"""

from dataclasses import dataclass, field, replace

from haystack.core.constants import DEFAULT_ALPHA, DEFAULT_D_LIST, DEFAULT_SEEDS_PER_CELL
from haystack.core.rng import derive_seed
from haystack.dataset.targets import TargetKind
from haystack.network.params import ArchKind, Architecture
from haystack.training.regularizers import Regularizer
from haystack.training.trainer import BatchKind, BatchPolicy, TrainConfig
from haystack.exceptions import ConfigError, ParameterError


@dataclass(frozen=True, slots=True)
class SweepCell:
    """
    One unit of work: a dataset and an optimizer seed.

    Attributes:
        arch: Architecture - Layout to train
        target: TargetKind - Target family
        n_total: int - Samples before splitting
        seed: int - Optimizer seed (the CSV seed column)
        data_seed: int - Dataset seed, shared by every seed of the cell
        train: TrainConfig - Training settings with seed filled in
        history_path: str - Per-run history CSV, or None
    """

    arch: Architecture
    target: TargetKind
    n_total: int
    seed: int
    data_seed: int
    train: TrainConfig
    history_path: str = None

    @property
    def identity(self):
        return (self.arch.kind.value, self.arch.d, self.n_total, self.seed)


@dataclass(frozen=True, slots=True)
class ExperimentSpec:
    """
    A sweep over architectures, dimensions, sample counts and seeds.

    Attributes:
        archs: tuple[ArchKind] - Layouts to run
        target: TargetKind - Target family
        d_list: tuple[int] - Input dimensions
        n_total_list: tuple[int] - Sample counts (before the 64/16/20 split)
        seeds_per_cell: int - Optimizer seeds per (arch, d, n_total)
        alpha: int - Channels per coordinate
        train: TrainConfig - Template; its seed is replaced per cell
        base_seed: int - Optimizer seeds are base_seed .. base_seed + seeds_per_cell - 1
        data_seed: int - Mixed with (d, n_total) into the dataset seed
        output: str - Result CSV path
        workers: int - Worker processes (1 runs in-process)
    """

    archs: tuple = (ArchKind.GLOBAL,)
    target: TargetKind = TargetKind.SQUARE
    d_list: tuple = DEFAULT_D_LIST
    n_total_list: tuple = (100000,)
    seeds_per_cell: int = DEFAULT_SEEDS_PER_CELL
    alpha: int = DEFAULT_ALPHA
    train: TrainConfig = field(default_factory=TrainConfig)
    base_seed: int = 0
    data_seed: int = 1234
    output: str = 'sweep.csv'
    workers: int = 1

    def __post_init__(self):
        if not self.archs or not self.d_list or not self.n_total_list:
            raise ParameterError('archs, d_list and n_total_list must be non-empty')
        if self.seeds_per_cell < 1:
            raise ParameterError(f'seeds_per_cell must be >= 1, got {self.seeds_per_cell}')
        if self.workers < 1:
            raise ParameterError(f'workers must be >= 1, got {self.workers}')
        if any(d < 1 for d in self.d_list):
            raise ParameterError(f'dimensions must be >= 1, got {list(self.d_list)}')
        for name in ('archs', 'd_list', 'n_total_list'):
            values = getattr(self, name)
            if len(set(values)) != len(values):
                raise ParameterError(f'{name} contains duplicates')

    @classmethod
    def from_config(cls, config):
        """
        Build a spec from a Config.

        Args:
            config: Config - Loaded configuration

        Returns:
            ExperimentSpec
        """
        try:
            archs = tuple(ArchKind.parse(a) for a in config.get('archs'))
            target = TargetKind.parse(config.get('target'))
        except ValueError as e:
            raise ConfigError(str(e)) from None

        policy_name = config.get('batch_policy')
        if policy_name == BatchKind.RATIO.value:
            policy = BatchPolicy.ratio(config.get('batch_divisor'))
        elif policy_name == BatchKind.FIXED.value:
            policy = BatchPolicy.fixed(config.get('batch_size'))
        else:
            raise ConfigError(f'batch_policy must be ratio or fixed, got {policy_name!r}')

        train = TrainConfig(
            epochs=config.get('epochs'),
            batch_policy=policy,
            regularizer=Regularizer.parse(config.get('reg'), config.get('lambda')),
            lr=config.get('lr'),
            decay=config.get('decay'),
            record_history=config.get('record_history'),
            record_path_norm=config.get('record_history'),
            log_every=config.get('log_every'),
        )
        return cls(
            archs=archs,
            target=target,
            d_list=tuple(config.get('d_list')),
            n_total_list=tuple(config.get('n_total_list')),
            seeds_per_cell=config.get('seeds_per_cell'),
            alpha=config.get('alpha'),
            train=train,
            base_seed=config.get('base_seed'),
            data_seed=config.get('data_seed'),
            output=config.get('output'),
            workers=config.get('workers'),
        )

    @property
    def cell_count(self):
        return len(self.archs) * len(self.d_list) * len(self.n_total_list) * self.seeds_per_cell

    def dataset_seed(self, d, n_total):
        """Dataset seed of a (d, n_total) cell; independent of arch and optimizer seed."""
        return derive_seed(self.data_seed, d, n_total)

    def history_path(self, arch, d, n_total, seed):
        stem = self.output[:-4] if self.output.endswith('.csv') else self.output
        return f'{stem}.{arch.value}_d{d}_n{n_total}_s{seed}.history.csv'

    def cells(self):
        """
        Enumerate the grid in (arch, d, n_total, seed) order.

        Returns:
            list[SweepCell]
        """
        out = []
        for kind in sorted(self.archs, key=lambda k: k.value):
            for d in sorted(self.d_list):
                arch = Architecture(kind, d, self.alpha)
                for n_total in sorted(self.n_total_list):
                    data_seed = self.dataset_seed(d, n_total)
                    for i in range(self.seeds_per_cell):
                        seed = self.base_seed + i
                        history = (self.history_path(kind, d, n_total, seed)
                                   if self.train.record_history else None)
                        out.append(SweepCell(
                            arch=arch,
                            target=self.target,
                            n_total=n_total,
                            seed=seed,
                            data_seed=data_seed,
                            train=replace(self.train, seed=seed),
                            history_path=history,
                        ))
        return out
