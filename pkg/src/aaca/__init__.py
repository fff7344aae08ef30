"""Ant-colony pheromone weighting for grayscale image interpolation."""

from .aco import AcoParams, PheromoneField, construct_pheromone, heuristic_field
from .estimators import AntColonyPheromone, ImageUpscaler
from .image import downscale, load_pgm, map_output_coord, save_pgm
from .interpolate import METHODS, aaca, bicubic, bilinear, nearest, obaca, upscale
from .metrics import mse, psnr
from .weighting import WeightPattern, boost, classify, global_weight

__version__ = "0.1.0"

__all__ = [
    "AcoParams", "PheromoneField", "construct_pheromone", "heuristic_field",
    "AntColonyPheromone", "ImageUpscaler",
    "downscale", "load_pgm", "map_output_coord", "save_pgm",
    "METHODS", "aaca", "bicubic", "bilinear", "nearest", "obaca", "upscale",
    "mse", "psnr",
    "WeightPattern", "boost", "classify", "global_weight",
]
