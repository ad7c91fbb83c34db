"""Statistics for bivariate interval-valued (symbolic) data.

Thin wrapper over the compiled `_symcov` extension: maximum-likelihood
and empirical moment estimators, the interval log-likelihood and its
gradient, seeded Monte-Carlo study generation, and symbolic-covariance
principal components.
"""

try:
    from symcov._symcov import *  # noqa: F401,F403  (installed layout)
    from symcov._symcov import __version__  # noqa: F401
except ImportError:  # in-tree build: extension next to the package on sys.path
    from _symcov import *  # noqa: F401,F403
    from _symcov import __version__  # noqa: F401
