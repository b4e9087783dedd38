"""
Weight-transfer experiment.

Phase A trains a local network and a global network independently on the
same data. Phase B embeds the validation-optimal local parameters into a
global network and keeps training that global network with a fresh Adam
state. Because the embedding computes the same function, the loaded
network starts phase B at the local network's training loss.
"""

import logging
from dataclasses import dataclass

from haystack.core.constants import DEFAULT_ALPHA
from haystack.core.rng import derive_seed
from haystack.dataset.generate import Split, generate
from haystack.dataset.targets import TargetKind
from haystack.network.embed import embed
from haystack.network.params import ArchKind, Architecture
from haystack.training.trainer import evaluate, train

logger = logging.getLogger(__name__)

SERIES_NAMES = ('local', 'global_scratch', 'global_loaded')


@dataclass(frozen=True, slots=True)
class TransferResult:
    """
    Attributes:
        local: TrainResult - Phase A, local network
        global_scratch: TrainResult - Phase A, global network from Glorot init
        global_loaded: TrainResult - Phase B, global network from the embedded local best
        local_train_mse: float - Scaled train loss of the local best params
        test_mse_orig: dict - series name -> Original-scale test loss of its best params
    """

    local: object
    global_scratch: object
    global_loaded: object
    local_train_mse: float
    test_mse_orig: dict

    @property
    def handoff_gap(self):
        """|loaded train loss before phase B - local train loss|; zero up to rounding."""
        return abs(self.global_loaded.initial_train_mse - self.local_train_mse)

    def trajectories(self):
        """
        The three histories for write_trajectories(); phase B continues the
        epoch numbering after phase A.

        Returns:
            list of (name, first_epoch, history)
        """
        offset = len(self.local.history)
        return [
            ('local', 0, self.local.history),
            ('global_scratch', 0, self.global_scratch.history),
            ('global_loaded', offset, self.global_loaded.history),
        ]


def transfer_experiment(d, n_total, config, alpha=DEFAULT_ALPHA,
                        target=TargetKind.SQUARE, data_seed=1234):
    """
    Run both phases of the transfer experiment.

    Args:
        d: int - Input dimension
        n_total: int - Samples before splitting
        config: TrainConfig - Settings for every phase (T epochs each)
        alpha: int - Channels per coordinate
        target: TargetKind - Target family
        data_seed: int - Mixed with (d, n_total) into the dataset seed

    Returns:
        TransferResult
    """
    dataset = generate(d, n_total, target, derive_seed(data_seed, d, n_total))
    local_arch = Architecture(ArchKind.LOCAL, d, alpha)
    global_arch = local_arch.as_global()

    logger.info('[Transfer] Phase A: local and global, d=%d n_total=%d epochs=%d', d, n_total, config.epochs)
    local = train(dataset, local_arch, config)
    scratch = train(dataset, global_arch, config)

    loaded_init = embed(local.best_params)
    local_train, _ = evaluate(local.best_params, dataset, Split.TRAIN)

    logger.info('[Transfer] Phase B: global from embedded local weights')
    loaded = train(dataset, global_arch, config, init=loaded_init)

    test = {}
    for name, result in zip(SERIES_NAMES, (local, scratch, loaded)):
        _, test[name] = evaluate(result.best_params, dataset, Split.TEST)

    out = TransferResult(
        local=local,
        global_scratch=scratch,
        global_loaded=loaded,
        local_train_mse=local_train,
        test_mse_orig=test,
    )
    logger.info('[Transfer] test_orig local=%.6g scratch=%.6g loaded=%.6g (handoff gap %.3g)',
                test['local'], test['global_scratch'], test['global_loaded'], out.handoff_gap)
    return out
