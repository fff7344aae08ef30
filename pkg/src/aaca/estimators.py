"""scikit-learn style wrappers around the pheromone builder and the upscalers.

``X`` is always a single 2-D grayscale image.  ``fit`` learns the pheromone
field of that image; ``transform`` upscales it.
"""

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_is_fitted

from . import aco
from .image import HALF_PIXEL
from .interpolate import METHODS, PHEROMONE_METHODS, upscale
from .metrics import psnr
from .validation import ImageValidationError, check_image, check_scale
from .weighting import DEFAULT_EPS


class AntColonyPheromone(BaseEstimator):
    """Build the pheromone field of an image.

    Parameters mirror :class:`aaca.aco.AcoParams`; ``random_state`` is the
    integer seed.

    Attributes
    ----------
    pheromone_ : aaca.aco.PheromoneField
    tau_ : ndarray of shape (height, width)
    n_ants_, memory_size_ : int
    """

    def __init__(self, alpha=1.0, beta=2.0, tau_init=1e-4, phi=1e-5, rho=0.1, q0=0.7,
                 iterations=4, steps_per_ant=40, ants=0, memory_size=0,
                 vmax_mode="empirical", random_state=0):
        self.alpha = alpha
        self.beta = beta
        self.tau_init = tau_init
        self.phi = phi
        self.rho = rho
        self.q0 = q0
        self.iterations = iterations
        self.steps_per_ant = steps_per_ant
        self.ants = ants
        self.memory_size = memory_size
        self.vmax_mode = vmax_mode
        self.random_state = random_state

    def aco_params(self):
        return aco.AcoParams(
            alpha=self.alpha, beta=self.beta, tau_init=self.tau_init, phi=self.phi,
            rho=self.rho, q0=self.q0, iterations=self.iterations,
            steps_per_ant=self.steps_per_ant, ants=self.ants,
            memory_size=self.memory_size, seed=self.random_state, vmax_mode=self.vmax_mode,
        )

    def fit(self, X, y=None):
        X = check_image(X)
        self.pheromone_ = aco.construct_pheromone(X, self.aco_params())
        self.tau_ = self.pheromone_.tau
        self.n_ants_ = self.pheromone_.n_ants
        self.memory_size_ = self.pheromone_.memory_size
        self.image_shape_ = X.shape
        return self

    def transform(self, X):
        """Pheromone field of ``X``, which must be the fitted image's shape."""
        check_is_fitted(self, "pheromone_")
        X = check_image(X)
        if X.shape != self.image_shape_:
            raise ImageValidationError(f"fitted on {self.image_shape_}, got {X.shape}")
        return self.tau_

    def fit_transform(self, X, y=None):
        return self.fit(X).tau_


class ImageUpscaler(AntColonyPheromone, TransformerMixin):
    """Upscale a grayscale image by an integer factor.

    ``method`` is one of ``nearest``, ``bilinear``, ``bicubic``, ``obaca``,
    ``aaca``.  Only the last two learn anything in ``fit`` (the pheromone
    field); for the others ``fit`` only validates.  ``transform`` must then be
    called on an image of the fitted shape.

    >>> up = ImageUpscaler(method="aaca", scale=4, random_state=42).fit(low)
    >>> high = up.transform(low)
    """

    def __init__(self, method="aaca", scale=4, obaca_normalize=True, eps=DEFAULT_EPS,
                 coord_mode=HALF_PIXEL, n_jobs=1, alpha=1.0, beta=2.0, tau_init=1e-4,
                 phi=1e-5, rho=0.1, q0=0.7, iterations=4, steps_per_ant=40, ants=0,
                 memory_size=0, vmax_mode="empirical", random_state=0):
        super().__init__(alpha=alpha, beta=beta, tau_init=tau_init, phi=phi, rho=rho, q0=q0,
                         iterations=iterations, steps_per_ant=steps_per_ant, ants=ants,
                         memory_size=memory_size, vmax_mode=vmax_mode,
                         random_state=random_state)
        self.method = method
        self.scale = scale
        self.obaca_normalize = obaca_normalize
        self.eps = eps
        self.coord_mode = coord_mode
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        check_scale(self.scale)
        X = check_image(X, min_size=2)
        if self.method in PHEROMONE_METHODS:
            super().fit(X)
        else:
            self.pheromone_ = None
            self.tau_ = None
            self.image_shape_ = X.shape
        return self

    def transform(self, X):
        if not hasattr(self, "image_shape_"):
            raise NotFittedError("call fit before transform")
        X = check_image(X, min_size=2)
        if self.pheromone_ is not None and X.shape != self.image_shape_:
            raise ImageValidationError(f"fitted on {self.image_shape_}, got {X.shape}")
        return upscale(X, self.scale, self.method, self.pheromone_,
                       obaca_normalize=self.obaca_normalize, eps=self.eps,
                       mode=self.coord_mode, n_jobs=self.n_jobs)

    def fit_transform(self, X, y=None):
        return self.fit(X).transform(X)

    def score(self, X, y):
        """PSNR (dB) of ``transform(X)`` against the reference ``y``."""
        return psnr(y, self.transform(X))
