from pathlib import Path
from typing import Dict, Optional

from ..evaluation import MODEL_METHOD, EvaluationResult
from ..runner import Runner
from .evaluate import evaluate_model
from .generate import generate_dataset
from .train import train_model

DATA_DIR = "data"
TRAIN_DIR = "train"
EVAL_DIR = "eval"


def run_pipeline(runner: Runner, directory: Path, data_dir: Optional[Path] = None) -> EvaluationResult:
    """generate, train and eval below ``directory``; an existing ``data_dir`` skips generation"""
    if data_dir is None:
        data_dir = directory / DATA_DIR
        with runner.with_out(data_dir) as active:
            generate_dataset(active)

    staged = runner.with_overrides(data_dir=str(data_dir))
    with staged.with_out(directory / TRAIN_DIR) as active:
        train_model(active)
    with staged.with_overrides(checkpoint=str(directory / TRAIN_DIR)).with_out(directory / EVAL_DIR) as active:
        return evaluate_model(active).parsed


def model_means(result: EvaluationResult) -> Dict[str, float]:
    """Mean F-Score, AUC and accuracy of the model row of a summary"""
    row = result.summary.loc[result.summary["method"] == MODEL_METHOD].iloc[0]
    return {"f_score": float(row["f_score_mean"]), "auc": float(row["auc_mean"]), "acc": float(row["acc_mean"])}
