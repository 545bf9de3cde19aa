"""Graph-aware selective state space blocks"""

from .block import SSMBlock, inverse_softplus, selective_params
from .discretize import causal_convolve, convolution_kernel, lti_parameters, zoh_discretize
from .scan import graph_scan, lti_kernel_apply, neighbor_aggregate, scan_step

__all__ = (
    "SSMBlock",
    "causal_convolve",
    "convolution_kernel",
    "graph_scan",
    "inverse_softplus",
    "lti_kernel_apply",
    "lti_parameters",
    "neighbor_aggregate",
    "scan_step",
    "selective_params",
    "zoh_discretize",
)
