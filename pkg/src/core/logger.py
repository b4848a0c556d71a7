"""
日誌管理模組

stdout 保留給驗證報告，日誌只寫到 stderr 與輪轉日誌檔案（RotatingFileHandler）。
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import List, Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# 依賴套件的 logger，DEBUG 模式下仍維持 WARNING
NOISY_LOGGERS = ("redis", "urllib3")


def _rotating_file_handler(path: str, max_bytes: int, backup_count: int) -> logging.Handler:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    return RotatingFileHandler(
        filename=path,
        maxBytes=max_bytes,
        backupCount=backup_count,
        encoding="utf-8",
    )


def setup_logging(
    log_level: str = "INFO",
    log_file: Optional[str] = None,
    max_bytes: int = 5 * 1024 * 1024,  # 5MB
    backup_count: int = 5,
    console_output: bool = True,
) -> None:
    """設定全域日誌配置

    Args:
        log_level: 日誌等級 (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: 日誌檔案路徑，None 表示不寫入檔案
        max_bytes: 單個日誌檔案的最大大小（位元組）
        backup_count: 保留的歷史日誌檔案數量
        console_output: 是否同時輸出到 stderr

    Example:
        >>> setup_logging(log_level="DEBUG", log_file="logs/braidcheck.log")
    """
    level = getattr(logging, log_level.upper(), logging.INFO)
    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    handlers: List[logging.Handler] = []
    if log_file:
        handlers.append(_rotating_file_handler(log_file, max_bytes, backup_count))
    if console_output:
        handlers.append(logging.StreamHandler(sys.stderr))
    for handler in handlers:
        handler.setLevel(level)
        handler.setFormatter(formatter)

    # 沒有任何 handler 時 basicConfig 會預設寫到 stderr，這裡改用 NullHandler
    if not handlers:
        handlers.append(logging.NullHandler())

    logging.basicConfig(level=level, handlers=handlers, force=True)

    logger = logging.getLogger(__name__)
    logger.debug(f"日誌系統已初始化 - 等級: {log_level}")
    if log_file:
        logger.debug(f"日誌檔案: {log_file} (最大 {max_bytes / 1024 / 1024:.1f}MB, 保留 {backup_count} 個備份)")


def log_section(logger: logging.Logger, title: str) -> None:
    """以分隔線包圍的段落標題

    Example:
        >>> log_section(logger, "驗證套件: main-theorem")
    """
    logger.info("=" * 60)
    logger.info(title)
    logger.info("=" * 60)


def suppress_noisy_loggers() -> None:
    """將 redis 等依賴套件的日誌等級設為 WARNING"""
    for logger_name in NOISY_LOGGERS:
        logging.getLogger(logger_name).setLevel(logging.WARNING)
