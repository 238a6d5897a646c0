"""Latent position estimation and k-NN vertex classification for random dot product graphs."""
from .align import AlignmentResult, mse_per_vertex, orthogonal_procrustes
from .embed import Embedding, EigenPairs, ase, lse, symmetric_eig
from .errors import InvariantError, NumericalError, ParameterError
from .knn import KnnModel, knn_predict, loo_cv_error, paper_k
from .model import (
    SecondMomentSummary,
    assign_threshold_labels,
    compute_probability_matrix,
    sample_adjacency,
    sample_dirichlet_latents,
    second_moment_summary,
)

__version__ = "0.1.0"
