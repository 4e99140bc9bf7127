from .cochain import OneCochain, ZeroCochain
from .gluing_data import GluingData, TransitionMatrix
from .job import JobConfig
from .results import (
    CriticalPoint, DeformationResult, FamilyCharts, GradientCheckReport, Superpotential,
)

__all__ = [
    'CriticalPoint', 'DeformationResult', 'FamilyCharts', 'GluingData', 'GradientCheckReport',
    'JobConfig', 'OneCochain', 'Superpotential', 'TransitionMatrix', 'ZeroCochain',
]
