"""
Haystack Constants Module

Defines the default hyperparameters, split fractions and file-format
constants shared by the dataset, network, training and harness layers.
"""

# =============================================================================
# Data Generation
# =============================================================================
# Inputs are drawn uniformly on the cube [-1, 1]^d

INPUT_LOW = -1.0
INPUT_HIGH = 1.0

# Train / validation / test split, in percent of the total row count.
# Splits are contiguous ranges in generation order.
SPLIT_TRAIN_PCT = 64
SPLIT_VAL_PCT = 16
SPLIT_TEST_PCT = 20

MIN_TOTAL_SAMPLES = 10           # Smallest n_total accepted by generate()

# =============================================================================
# Architecture
# =============================================================================

DEFAULT_ALPHA = 50               # Channels per input coordinate

# =============================================================================
# Optimizer (Adam)
# =============================================================================

DEFAULT_LR = 0.01                # Starting learning rate
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8
DEFAULT_DECAY = 0.0              # Inverse-time decay per optimizer step
TRANSFER_DECAY = 0.03            # Decay used by the weight-transfer experiment

# =============================================================================
# Training Loop
# =============================================================================

DEFAULT_EPOCHS = 1000
DEFAULT_BATCH_DIVISOR = 100      # batch = (n_train + n_val) // divisor
DEFAULT_BATCH_SIZE = 80          # Fixed-size batch policy
DEFAULT_LOG_EVERY = 100          # Epochs between progress lines

# Tuned penalty constants per regularizer (fixed with respect to d)
DEFAULT_LAMBDA = {
    'l1': 1e-8,
    'l2': 1e-7,
    'path': 1e-5,
}

# =============================================================================
# Experiment Harness
# =============================================================================

DEFAULT_D_LIST = tuple(range(4, 61, 4))
DEFAULT_SEEDS_PER_CELL = 4
DEFAULT_GAP_RATIO = 2.0          # test/train ratio marking a visible gap
DEFAULT_POOL = 10                # Rows pooled per sparsity-map cell

# =============================================================================
# Bounds
# =============================================================================

DEFAULT_BARRON = 1.0             # O(1) Barron-norm estimate of the scaled target

# =============================================================================
# File Formats
# =============================================================================

FLOAT_FORMAT = '.17g'            # Round-trip exact decimal floats in CSV output
WEIGHTS_MAGIC = b'HSWT'
WEIGHTS_VERSION = 1
PGM_MAXVAL = 255
