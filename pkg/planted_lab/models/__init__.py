from planted_lab.models.model_spec import Family, ModelSpec, ScaledParams, scale_parameters
from planted_lab.models.subset_codec import SubsetCodec, rank_subset, unrank_subset
from planted_lab.models.instance import (
    Instance, sample_instance, noiseless_instance, solution_weight, draw_planted,
)
from planted_lab.models.random_stream import MAX_SEED, Purpose, check_seed, stream, derive_seed

__all__ = [
    "Family", "ModelSpec", "ScaledParams", "scale_parameters",
    "SubsetCodec", "rank_subset", "unrank_subset",
    "Instance", "sample_instance", "noiseless_instance", "solution_weight", "draw_planted",
    "MAX_SEED", "Purpose", "check_seed", "stream", "derive_seed",
]
