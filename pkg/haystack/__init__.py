"""
Haystack - sample-complexity experiments for separable targets.

Trains global, locally connected and local two-hidden-layer ReLU networks
on targets of the form (1/d) * sum g(x_i), measures how test loss, the
generalization gap and the path norm scale with dimension and sample
count, and evaluates the closed-form bounds those measurements are
compared against.

Usage:
    from haystack.dataset import TargetKind, generate
    from haystack.network import Architecture, ArchKind
    from haystack.training import TrainConfig, train

    data = generate(d=8, n_total=1000, target=TargetKind.SQUARE, seed=0)
    result = train(data, Architecture(ArchKind.LOCAL, 8, alpha=20), TrainConfig(epochs=300))
"""

__version__ = '0.1.0'
__all__ = ['__version__']
