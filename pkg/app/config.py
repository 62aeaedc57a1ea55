import sys
import threading
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field


def get_project_root() -> Path:
    """Get the project root directory"""
    return Path(__file__).resolve().parent.parent


PROJECT_ROOT = get_project_root()


class StartRule(str, Enum):
    """How the first FPS / FFPS key point is chosen"""

    FIRST_UNMASKED = "first_unmasked"
    MAX_CENTROID_DISTANCE = "max_centroid_distance_unmasked"
    RANDOM = "random"


class WeightTransform(str, Enum):
    """Monotone map from isolation rate to sampling weight"""

    COMPLEMENT = "complement"
    SOFTMAX = "softmax"


class TrainSampler(str, Enum):
    """Key point sampler of the training pipeline"""

    FPS = "fps"
    FFPS = "ffps"
    SWS = "sws"


class DownsampleMode(str, Enum):
    """Neighborhood size policy of training-time point removal

    ``lgb`` draws the size, ``random`` removes uniformly from the whole cloud and
    ``knn`` removes one contiguous patch.
    """

    LGB = "lgb"
    RANDOM = "random"
    KNN = "knn"


class ProtocolSettings(BaseModel):
    k: int = Field(20, ge=1, description="Neighbor count for the isolation graph")
    omega: float = Field(0.95, gt=0.0, le=1.0, description="FFPS quantile threshold")
    rho: float = Field(
        0.25, ge=0.0, lt=1.0, description="Training size-jitter fraction"
    )
    target_n: int = Field(1024, ge=1, description="Canonical cloud size")
    m: int = Field(512, ge=1, description="Number of key points")
    seed: int = Field(0, ge=0, description="Base seed for every random stream")
    start_rule: StartRule = Field(
        StartRule.MAX_CENTROID_DISTANCE, description="FPS start policy"
    )
    weight_transform: WeightTransform = Field(
        WeightTransform.COMPLEMENT, description="Isolation-to-weight transform"
    )
    softmax_temperature: float = Field(
        0.1, gt=0.0, description="Temperature of the softmax weight transform"
    )
    train_sampler: TrainSampler = Field(
        TrainSampler.SWS, description="Key point sampler of the training pipeline"
    )
    downsample_mode: DownsampleMode = Field(
        DownsampleMode.LGB, description="Point removal policy of training resampling"
    )


# ProtocolConfig is the name the pipelines and the CLI use for the same settings.
ProtocolConfig = ProtocolSettings


class KnnSettings(BaseModel):
    brute_force_max_points: int = Field(
        1024,
        ge=2,
        description="Largest cloud searched with the full distance matrix; a kd-tree is used above",
    )
    workers: int = Field(
        1, description="Worker threads for kd-tree queries (-1 uses every core)"
    )


class NormalSettings(BaseModel):
    degenerate_tolerance: float = Field(
        1e-10,
        gt=0.0,
        description="Relative eigenvalue threshold under which a neighborhood counts as collinear",
    )


class CorruptionSchedule(BaseModel):
    """Severity constants of every corruption family, s being the severity level"""

    scale_step: float = Field(0.1, gt=0.0, description="Scale bound 1 + step*s")
    jitter_sigma_step: float = Field(0.01, gt=0.0, description="Jitter sigma step*s")
    drop_global_step: float = Field(
        0.15, gt=0.0, description="Fraction of points dropped per severity level"
    )
    drop_local_patch_fraction: float = Field(
        0.05, gt=0.0, description="Patch size of one dropped cluster, as a fraction of N"
    )
    add_step: float = Field(
        0.1, gt=0.0, description="Fraction of N appended per severity level"
    )
    add_global_half_width: float = Field(
        1.0, gt=0.0, description="Half width of the cube global outliers are drawn in"
    )
    add_local_sigma: float = Field(
        0.05, gt=0.0, description="Standard deviation of one local outlier blob"
    )
    rotate_step_degrees: float = Field(
        15.0, gt=0.0, description="Maximum rotation angle per severity level"
    )


class LogSettings(BaseModel):
    print_level: str = Field("INFO", description="Level of the stderr sink")
    logfile_level: str = Field("DEBUG", description="Level of the file sink")
    log_to_file: bool = Field(False, description="Whether to write logs/<name>.log")


class AppConfig(BaseModel):
    protocol: ProtocolSettings = Field(default_factory=ProtocolSettings)
    knn: KnnSettings = Field(default_factory=KnnSettings)
    normals: NormalSettings = Field(default_factory=NormalSettings)
    corruption: CorruptionSchedule = Field(default_factory=CorruptionSchedule)
    logging: LogSettings = Field(default_factory=LogSettings)


_SECTIONS = {
    "protocol": ProtocolSettings,
    "knn": KnnSettings,
    "normals": NormalSettings,
    "corruption": CorruptionSchedule,
    "logging": LogSettings,
}


class Config:
    _instance = None
    _lock = threading.Lock()
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            with self._lock:
                if not self._initialized:
                    self._config = None
                    self._load_initial_config()
                    self._initialized = True

    @staticmethod
    def _get_config_path() -> Optional[Path]:
        root = PROJECT_ROOT
        config_path = root / "config" / "config.toml"
        if config_path.exists():
            return config_path
        example_path = root / "config" / "config.example.toml"
        if example_path.exists():
            return example_path
        return None

    def _load_config(self) -> dict:
        config_path = self._get_config_path()
        if config_path is None:
            return {}
        try:
            with config_path.open("rb") as f:
                return tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            print(
                f"Failed to parse config file {config_path}: {e}; using defaults",
                file=sys.stderr,
            )
            return {}

    def _load_initial_config(self):
        raw_config = self._load_config()
        sections = {}
        for name, settings_cls in _SECTIONS.items():
            section = raw_config.get(name, {})
            try:
                sections[name] = settings_cls(**section)
            except Exception as e:
                print(
                    f"Invalid [{name}] section: {e}; using defaults", file=sys.stderr
                )
                sections[name] = settings_cls()
        self._config = AppConfig(**sections)

    @property
    def protocol(self) -> ProtocolSettings:
        return self._config.protocol

    @property
    def knn(self) -> KnnSettings:
        return self._config.knn

    @property
    def normals(self) -> NormalSettings:
        return self._config.normals

    @property
    def corruption(self) -> CorruptionSchedule:
        return self._config.corruption

    @property
    def logging(self) -> LogSettings:
        return self._config.logging

    def reload_config(self) -> bool:
        """Re-read the config file, keeping the previous settings on failure."""
        with self._lock:
            old_config = self._config
            try:
                self._load_initial_config()
                return True
            except Exception as e:
                print(f"Failed to reload config: {e}", file=sys.stderr)
                self._config = old_config
                return False


config = Config()
