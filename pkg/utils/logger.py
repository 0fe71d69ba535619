"""
Transparent Logging System (Visual Edition)
Provides standardized, color-coded logging for builds and verification checks.
Uses 'colorlog' to keep a visual hierarchy of catalog, build, check and lattice events.
All output goes to stderr so JSON/CSV on stdout stays machine readable.
"""

import logging
import colorlog

# Define distinctive colors for each event type
LOG_COLORS = {
    'DEBUG':    'cyan',
    'INFO':     'white',
    'WARNING':  'yellow',
    'ERROR':    'red',
    'CRITICAL': 'red,bg_white',

    # Custom event colors
    'CATALOG':  'purple',
    'BUILD':    'cyan',
    'CHECK':    'blue',
    'PASS':     'green',
    'FAIL':     'bold_red',
    'SKIP':     'yellow',
    'LATTICE':  'purple',
    'SUITE':    'white',
}


class VerifyLogger:
    """Helper class for consistent, colored verification logging."""

    _configured = False

    @classmethod
    def configure(cls, level=logging.INFO):
        """Setup global logger configuration if not already done."""
        if cls._configured: return

        handler = colorlog.StreamHandler()
        handler.setFormatter(colorlog.ColoredFormatter(
            '%(log_color)s%(asctime)s | %(message)s',
            datefmt='%H:%M:%S',
            log_colors=LOG_COLORS,
            secondary_log_colors={},
            style='%'
        ))

        logger = colorlog.getLogger()
        logger.addHandler(handler)
        logger.setLevel(level)

        # Silence other noisy loggers
        for lib in ("langgraph", "asyncio"):
            logging.getLogger(lib).setLevel(logging.WARNING)

        cls._configured = True

    @staticmethod
    def _print_colored(tag: str, color: str, title: str, details: str = ""):
        """Internal format for colored log messages."""
        RESET = "\033[0m"
        COLORS = {
            'red': "\033[91m", 'green': "\033[92m", 'yellow': "\033[93m",
            'blue': "\033[94m", 'purple': "\033[95m", 'cyan': "\033[96m", 'white': "\033[97m",
            'bold_red': "\033[1;91m",
        }

        c = COLORS.get(color, "\033[97m")
        tag_width = 14
        formatted_tag = f"[{tag}]".ljust(tag_width)

        if details:
            msg = f"{c}{formatted_tag} {title}: {RESET}{details}"
        else:
            msg = f"{c}{formatted_tag} {title}{RESET}"

        logging.getLogger("toolkit").info(msg)

    @staticmethod
    def catalog_entry(name: str, coxeter, eigenvalue: float):
        h = "-" if coxeter is None else str(coxeter)
        VerifyLogger._print_colored("CATALOG", "purple", name, f"h={h} phi={eigenvalue:.12f}")

    @staticmethod
    def family_built(kind: str, graph_name: str, vertices: int):
        VerifyLogger._print_colored("BUILD", "cyan", f"{kind} family", f"{graph_name} ({vertices} vertices)")

    @staticmethod
    def check_result(check: str, max_residual: float, tol: float, passed: bool):
        tag, color = ("PASS", "green") if passed else ("FAIL", "bold_red")
        VerifyLogger._print_colored(tag, color, check, f"max residual {max_residual:.3e} (tol {tol:.1e})")

    @staticmethod
    def skipped(check: str, item: str, reason: str):
        VerifyLogger._print_colored("SKIP", "yellow", check, f"{item}: {reason}")

    @staticmethod
    def lattice_built(label: str, dimension: int):
        VerifyLogger._print_colored("LATTICE", "purple", label, f"dimension {dimension}")

    @staticmethod
    def suite_summary(passed: int, total: int):
        color = 'green' if passed == total else 'bold_red'
        VerifyLogger._print_colored("SUITE", color, "Battery finished", f"{passed}/{total} checks passed")
