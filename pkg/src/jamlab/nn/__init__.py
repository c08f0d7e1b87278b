from . import tape
from .layers import (
    DenseLayer,
    GruCell,
    bgru_encode,
    bgru_states,
    decoder_gru_run,
    dense,
    glorot,
    gru_run,
    gru_step,
    kl_divergence,
    sample_gaussian,
    sigmoid,
    softmax,
)
from .optim import Adam, NonFiniteLossError, TrainConfig, fit, train_step
from .tape import Node, Tape, constant, parameter
from .weights import FORMAT_VERSION, ModelWeights, WeightsError, load_weights, save_weights
