"""
braidcheck 命令列入口

辮化對稱冪、Poisson 閉包與量子 Veronese 的驗證工具。
報告輸出到 stdout，日誌輸出到 stderr 與日誌檔案。
"""

import argparse
import csv
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from src.algebra.braided import EXT, SYM
from src.algebra.errors import ResourceLimit
from src.algebra.poisson import t_members
from src.algebra.veronese import RELATION_CSV_HEADER, veronese_relations
from src.config.config import load_config
from src.core.logger import log_section, setup_logging, suppress_noisy_loggers
from src.models.base import VerificationReport
from src.models.run_config import RunConfig
from src.workers.controller import VerificationController

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INTERRUPTED = 130

SUITE_CHOICES = [
    "main-theorem",
    "cubes",
    "poisson-closure",
    "veronese",
    "nilradical",
    "t-count",
    "terminal-monomial",
    "double-duals",
    "hw-embedding",
    "all",
]


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", default="config.yaml", help="配置檔案路徑 (預設: config.yaml)")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="覆蓋配置檔案的日誌等級",
    )
    common.add_argument("--backend", choices=["exact", "specialize"], help="計算後端")
    common.add_argument("--q0", help="specialize 後端的特殊化點 (NUM/DEN)")
    common.add_argument("--seed", type=int, help="隨機種子")
    common.add_argument("--format", choices=["json", "csv", "table"], help="輸出格式")
    common.add_argument("--cache-dir", help="結果快取目錄")
    common.add_argument("--no-cache", action="store_true", help="不讀寫結果快取")
    common.add_argument("--max-block", type=int, help="權重區塊維度上限")
    common.add_argument("--no-timing", action="store_true", help="不記錄耗時（ms 一律為 0）")
    return common


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """解析命令列參數

    Returns:
        解析後的參數
    """
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="braidcheck",
        description="辮化對稱冪驗證工具 - U_q(sl2) 模的辮化對稱/外冪、Poisson 閉包與量子 Veronese",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
範例:
  braidcheck decompose --l 3 --n 4 --kind sym
  braidcheck verify main-theorem --l-max 4 --n-max 4
  braidcheck verify all --backend exact --format table
  braidcheck hilbert poisson --l 3 --n-max 4
  braidcheck hilbert veronese --n 2 --d 2 --k-max 3
  braidcheck export relations --n 2 --d 2
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="計算 S^n_σ V_ℓ 或 Λ^n_σ V_ℓ 的分解")
    p.add_argument("--l", type=int, required=True, help="V_ℓ 的最高權")
    p.add_argument("--n", type=int, required=True, help="次數")
    p.add_argument("--kind", choices=[SYM, EXT], default=SYM, help="sym 或 ext")

    p = sub.add_parser("verify", parents=[common], help="執行驗證套件")
    p.add_argument("suite", choices=SUITE_CHOICES, help="套件名稱")
    p.add_argument("--l-max", type=int, help="ℓ 的上限")
    p.add_argument("--n-max", type=int, help="次數上限")

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert 函數")
    p.add_argument("target", choices=["braided", "poisson", "veronese"], help="目標代數")
    p.add_argument("--l", type=int, default=1, help="V_ℓ 的最高權")
    p.add_argument("--n-max", type=int, help="次數上限")
    p.add_argument("--kind", choices=[SYM, EXT], default=SYM, help="sym 或 ext (braided)")
    p.add_argument("--n", type=int, default=2, help="Veronese 的 n")
    p.add_argument("--d", type=int, default=2, help="Veronese 的 d")
    p.add_argument("--k-max", type=int, default=3, help="Veronese 的 k 上限")

    p = sub.add_parser("export", parents=[common], help="匯出 CSV 稽核資料")
    p.add_argument("what", choices=["relations", "t-monomials"], help="匯出內容")
    p.add_argument("--l", type=int, default=3, help="T_(n,ℓ) 的 ℓ")
    p.add_argument("--n", type=int, default=2, help="Veronese 的 n 或 T_(n,ℓ) 的 n")
    p.add_argument("--d", type=int, default=2, help="Veronese 的 d")

    return parser.parse_args(argv)


def build_run_config(config: Dict[str, Any], args: argparse.Namespace) -> RunConfig:
    """合併配置檔案與命令列旗標

    Raises:
        ValidationError: 設定值無效
    """
    engine = config.get("engine", {})
    output = config.get("output", {})
    cache = config.get("cache", {})
    redis = config.get("redis", {}) or {}

    values: Dict[str, Any] = {
        "backend": args.backend or engine.get("backend", "specialize"),
        "q0": args.q0 or engine.get("q0", "7/5"),
        "seed": args.seed if args.seed is not None else engine.get("seed", 0),
        "max_block": args.max_block if args.max_block is not None else engine.get("max_block", 2000),
        "max_degree": engine.get("max_degree", 6),
        "format": args.format or output.get("format", "json"),
        "timing": False if args.no_timing else output.get("timing", True),
        "cache_dir": args.cache_dir or cache.get("dir", "./data/cache"),
        "use_cache": not args.no_cache and cache.get("enabled", True),
        "redis_url": redis.get("url"),
        "namespace": cache.get("namespace", "braidcheck"),
    }
    return RunConfig(**values)


def _overrides(args: argparse.Namespace, run_config: RunConfig) -> Dict[str, Any]:
    if args.command == "decompose":
        return {"l": args.l, "n": args.n, "kind": args.kind}
    if args.command == "hilbert":
        return {
            "target": args.target,
            "l": args.l,
            "n_max": args.n_max if args.n_max is not None else run_config.max_degree,
            "kind": args.kind,
            "n": args.n,
            "d": args.d,
            "k_max": args.k_max,
        }
    overrides: Dict[str, Any] = {}
    if args.l_max is not None:
        overrides["l_max"] = args.l_max
    if args.n_max is not None:
        overrides["n_max"] = args.n_max
    return overrides


def write_report(report: VerificationReport, fmt: str) -> None:
    """將報告寫到 stdout"""
    if fmt == "json":
        sys.stdout.write(json.dumps(report.to_json(), ensure_ascii=False, indent=2) + "\n")
    elif fmt == "csv":
        csv.writer(sys.stdout, lineterminator="\n").writerows(report.to_csv_rows())
    else:
        sys.stdout.write(report.to_table() + "\n")


def export_csv(args: argparse.Namespace) -> None:
    """export 指令：Veronese 關係或 T_(n,ℓ) 單項式"""
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.what == "relations":
        algebra = veronese_relations(args.n, args.d)
        writer.writerow(RELATION_CSV_HEADER)
        writer.writerows(algebra.csv_rows())
    else:
        writer.writerow([f"k{j}" for j in range(args.l + 1)])
        writer.writerows(t_members(args.l, args.n))


def main(argv: Optional[List[str]] = None) -> int:
    """主程式入口

    Returns:
        結束碼：0 全部通過、1 驗證失敗、2 用法或配置錯誤、3 超過資源上限
    """
    args = parse_args(argv)

    try:
        config = load_config(args.config)

        log_config = config.get("logging", {})
        log_level = args.log_level or log_config.get("level", "INFO")
        setup_logging(
            log_level=log_level,
            log_file=log_config.get("file"),
            max_bytes=log_config.get("max_bytes", 5242880),
            backup_count=log_config.get("backup_count", 5),
            console_output=True,
        )
        suppress_noisy_loggers()
        logger = logging.getLogger(__name__)

        if args.command == "export":
            export_csv(args)
            return EXIT_OK

        run_config = build_run_config(config, args)
        log_section(logger, f"braidcheck {args.command} 啟動")
        logger.info(f"配置: {args.config}")
        logger.info(f"後端: {run_config.backend}" + (f" (q0 = {run_config.q0})" if run_config.backend == "specialize" else ""))

        controller = VerificationController(config, run_config)
        try:
            name = args.suite if args.command == "verify" else args.command
            command = " ".join(argv if argv is not None else sys.argv[1:])
            report = controller.verify(name, _overrides(args, run_config), command=command)
        finally:
            controller.close()

        write_report(report, run_config.format)
        if not report.all_passed:
            failed = sum(1 for c in report.checks if not c.passed)
            logger.warning(f"{failed} 項檢查未通過")
            return EXIT_FAILED

        logger.info("所有檢查通過")
        return EXIT_OK

    except ResourceLimit as e:
        print(f"Resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE

    except FileNotFoundError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    except (ValidationError, ValueError, ImportError) as e:
        print(f"Config error: {e}", file=sys.stderr)
        return EXIT_USAGE

    except KeyboardInterrupt:
        print("\n\nInterrupted by user", file=sys.stderr)
        return EXIT_INTERRUPTED

    except Exception as e:
        print(f"Fatal error: {e}", file=sys.stderr)
        import traceback

        traceback.print_exc()
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
