from dataclasses import asdict, dataclass


class TrainerError(Exception):
    pass


@dataclass(frozen=True)
class TrainConfig:
    """Fine-tuning hyperparameters.

    Defaults are the published recipe; max_length must not exceed the
    encoder's position-embedding limit, checked again at train time.
    """

    model: str
    learning_rate: float = 2e-5
    warmup_steps: int = 1412
    batch_size: int = 16
    epochs: int = 4
    max_length: int = 512
    seed: int = 0

    def __post_init__(self):
        if not self.model:
            raise TrainerError("model identifier is required")
        positives = {
            "learning_rate": self.learning_rate,
            "batch_size": self.batch_size,
            "epochs": self.epochs,
            "max_length": self.max_length,
        }
        for name, value in positives.items():
            if value <= 0:
                raise TrainerError(f"{name} must be positive, got {value}")
        if self.warmup_steps < 0:
            raise TrainerError("warmup_steps must be >= 0")

    def to_json(self) -> dict:
        return asdict(self)
