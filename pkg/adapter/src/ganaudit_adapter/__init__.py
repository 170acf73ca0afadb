"""ganaudit-adapter: produces schema-valid prediction files for the ganaudit
toolkit by running (or fine-tuning) ViT/CvT/Swin two-class detectors over a
corpus manifest.  Interaction with the toolkit is file-based only."""

from .finetune import TrainConfig, finetune, split_rows
from .infer import InferResult, infer
from .models import ARCHITECTURES, ModelSpec, init_checkpoint, load_model
from .preprocess import PREPROCESSING_ID, image_to_tensor

__version__ = "0.1.0"

__all__ = [
    "ARCHITECTURES", "InferResult", "ModelSpec", "PREPROCESSING_ID", "TrainConfig",
    "finetune", "image_to_tensor", "infer", "init_checkpoint", "load_model", "split_rows",
]
