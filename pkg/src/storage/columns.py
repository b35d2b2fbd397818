"""Скрипт с классом с заголовками CSV-отчетов."""


class CsvHeaders:
    """Константы заголовков CSV."""

    # Кривые отложения
    CURVES = ("rule", "scenario", "seed", "threshold", "deferral_rate", "accuracy", "risk", "relative_cost")

    # Корзины калибровки
    CALIBRATION = ("bucket_lo", "bucket_hi", "count", "mean_conf", "event_freq")

    # История обучения пост-хок моделей
    HISTORY = ("rule", "seed", "epoch", "train_loss", "heldout_loss")

    # Кривые на обучающей части пост-хок моделей
    POSTHOC_TRAIN = ("split", *CURVES)

    # Рабочие точки правил с фиксированным порогом
    OPERATING_POINTS = ("rule", "seed", "threshold", "deferral_rate", "accuracy", "risk")

    # Имена файлов
    CURVES_FILE = "curves.csv"
    POSTHOC_TRAIN_FILE = "curves_posthoc_train.csv"
    HISTORY_FILE = "posthoc_history.csv"
    MANIFEST_FILE = "manifest.json"
    PLOT_FILE = "curves.svg"
    OPERATING_POINTS_FILE = "operating_points.csv"
    MODELS_DIR = "models"

    @staticmethod
    def calibration_file(seed: int) -> str:
        """Имя файла калибровки для зерна."""
        return f"calibration_{seed}.csv"
