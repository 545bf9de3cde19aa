"""Command-line entry point: ``sdm generate | train | eval | sweep | ablate``"""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional

from .commands import ablate, evaluate, generate, sweep, train
from .errors import SourceDetError
from .log import configure_logging
from .runner import Runner, load_config
from .types import UNSET, Outcome

logger = logging.getLogger(__name__)


def _flag(parser: argparse.ArgumentParser, name: str, help: str) -> None:
    parser.add_argument(name, action="store_const", const=True, default=UNSET, help=help)


def build_parser() -> argparse.ArgumentParser:
    """Flags default to ``UNSET`` so only the ones given override the config file"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="JSON config file; flags take precedence over it")
    common.add_argument("--seed", type=int, default=UNSET, help="root seed")
    common.add_argument("--out", default=UNSET, help="output directory")
    common.add_argument("--jobs", type=int, default=UNSET, help="worker processes")

    parser = argparse.ArgumentParser(
        prog="sdm",
        description="Rumour source detection on hypergraph snapshot sequences. Set SDM_LOG=INFO for progress.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    gen = subparsers.add_parser("generate", parents=[common], help="simulate a dataset of cascades")
    gen.add_argument("--n-cascades", type=int, default=UNSET, help="cascades to simulate")
    _flag(gen, "--dump-features", "also write feature CSVs of the first cascade")

    trn = subparsers.add_parser("train", parents=[common], help="train a detector on a dataset")
    trn.add_argument("--data", default=UNSET, help="dataset directory")

    evl = subparsers.add_parser("eval", parents=[common], help="evaluate a checkpoint on held-out cascades")
    evl.add_argument("--data", default=UNSET, help="dataset directory")
    evl.add_argument("--checkpoint", default=UNSET, help="training directory or checkpoint file")
    evl.add_argument("--threshold", type=float, default=UNSET, help="decision threshold on source scores")
    _flag(evl, "--baseline", "also score the Jordan-center baseline")

    subparsers.add_parser("sweep", parents=[common], help="grid over initial coverage and capture interval")
    subparsers.add_parser("ablate", parents=[common], help="compare the model against its ablated variants")
    return parser


def _run_generate(runner: Runner, args: argparse.Namespace) -> Outcome[Any]:
    return generate.sync_detailed(
        runner=runner,
        seed=args.seed,
        out=args.out,
        n_cascades=args.n_cascades,
        dump_features=args.dump_features,
    )


def _run_train(runner: Runner, args: argparse.Namespace) -> Outcome[Any]:
    return train.sync_detailed(runner=runner, seed=args.seed, out=args.out, data_dir=args.data)


def _run_eval(runner: Runner, args: argparse.Namespace) -> Outcome[Any]:
    return evaluate.sync_detailed(
        runner=runner,
        out=args.out,
        data_dir=args.data,
        checkpoint=args.checkpoint,
        threshold=args.threshold,
        baseline=args.baseline,
    )


def _run_sweep(runner: Runner, args: argparse.Namespace) -> Outcome[Any]:
    return sweep.sync_detailed(runner=runner, seed=args.seed, out=args.out)


def _run_ablate(runner: Runner, args: argparse.Namespace) -> Outcome[Any]:
    return ablate.sync_detailed(runner=runner, seed=args.seed, out=args.out)


COMMANDS: Dict[str, Callable[[Runner, argparse.Namespace], Outcome[Any]]] = {
    "generate": _run_generate,
    "train": _run_train,
    "eval": _run_eval,
    "sweep": _run_sweep,
    "ablate": _run_ablate,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging()
    try:
        runner = Runner(config=load_config(args.config, {"jobs": args.jobs}))
        logger.info("running %s", args.command)
        outcome = COMMANDS[args.command](runner, args)
    except SourceDetError as exc:
        logger.error("%s failed: %s", args.command, exc)
        return 1
    logger.info("%s finished: %d artifacts in %s", args.command, len(outcome.artifacts), outcome.out_dir)
    print(outcome.out_dir)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
