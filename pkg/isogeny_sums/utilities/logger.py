import logging
import sys


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger with the given name, writing to stderr.

    stdout is reserved for report rows, so TSV output stays machine-readable.

    :param name: The name of the logger.
    :return: The logger object.
    """

    logger = logging.getLogger(name)

    if not logger.handlers:
        logger.setLevel(logging.INFO)
        console_handler = logging.StreamHandler(sys.stderr)

        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)
        logger.propagate = False
    return logger


def set_log_level(logger: logging.Logger, level: int | str) -> None:
    """
    Set the log level for a logger.

    :param logger: The logger object.
    :param level: The log level to set.
    :return: None
    """
    logger.setLevel(level)


def log_check(logger: logging.Logger, label: str, ok: bool, **context: object) -> bool:
    """
    Log the outcome of an identity check and hand the outcome back.

    Failures go out at ERROR with their parameters, passes at DEBUG.

    :param logger: The logger object.
    :param label: Short name of the identity being checked
    :param ok: Whether the identity held
    :param context: Parameters identifying the case (p, a, b, ...)
    :return: ok, unchanged
    """
    details = ", ".join(f"{key}={value}" for key, value in context.items())
    if ok:
        logger.debug(f"{label} holds ({details})")
    else:
        logger.error(f"{label} FAILED ({details})")
    return ok
