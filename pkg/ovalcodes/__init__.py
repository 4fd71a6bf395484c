"""
This file initializes the ovalcodes package and its shared services.

It sets up:
- Environment configuration (enumeration budget, worker threads, log level)
- Logging for the command line and the web service
- The Flask application that exposes the verification tools as a JSON API

The mathematics lives in the submodules: gf2m (finite fields), opoly (oval
polynomials), lincode (linear codes) and constructions (hyperovals and the
near MDS generator matrices).
"""

import logging
import os
import sys

from dotenv import load_dotenv
from flask import Flask, jsonify

from .errors import ConfigError, OvalCodesError

# Load environment variables from .env (OVALCODES_BUDGET, OVALCODES_WORKERS, ...)
load_dotenv()

DEFAULT_BUDGET = 2 ** 28
MAX_WORKERS = 8

logger = logging.getLogger(__name__)


def _int_from_env(name, default):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.strip(), 0)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def enumeration_budget():
    """Largest number of codewords q^k an exhaustive enumeration may visit."""
    return _int_from_env("OVALCODES_BUDGET", DEFAULT_BUDGET)


def worker_count():
    return _int_from_env("OVALCODES_WORKERS", min(os.cpu_count() or 1, MAX_WORKERS))


def configure_logging(level=None):
    """Attach one stream handler to the package logger (safe to call twice)."""
    level = level or os.getenv("OVALCODES_LOG_LEVEL", "INFO")
    pkg_logger = logging.getLogger("ovalcodes")
    try:
        pkg_logger.setLevel(level.upper() if isinstance(level, str) else level)
    except (TypeError, ValueError):
        raise ConfigError(f"unknown log level {level!r}")
    handler = next((h for h in pkg_logger.handlers if getattr(h, "_ovalcodes", False)), None)
    if handler is None:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        handler._ovalcodes = True
        pkg_logger.addHandler(handler)
    else:
        # follow the current stderr (it is swapped out under test runners)
        handler.setStream(sys.stderr)
    return pkg_logger


def create_app(config=None):
    app = Flask(__name__)

    app.config["ENUMERATION_BUDGET"] = enumeration_budget()
    app.config["WORKERS"] = worker_count()
    app.json.sort_keys = False
    if config:
        app.config.update(config)

    logger.info("[API] budget=%s workers=%s", app.config["ENUMERATION_BUDGET"], app.config["WORKERS"])

    from .api_routes import api_bp
    app.register_blueprint(api_bp)

    @app.errorhandler(OvalCodesError)
    def handle_oval_error(e):
        from .errors import BudgetExceededError, HypothesisError, ResourceCapError

        status = 400
        if isinstance(e, HypothesisError):
            status = 422
        elif isinstance(e, (BudgetExceededError, ResourceCapError)):
            status = 413
        return jsonify({"error": str(e), "kind": type(e).__name__}), status

    @app.errorhandler(500)
    def handle_internal_server_error(e):
        return jsonify({"error": "Internal Server Error"}), 500

    return app
