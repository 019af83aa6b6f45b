"""
Django settings for the roadqueue project.

The project has no web front end: Django hosts the apps, the management
commands that form the command-line interface, and the logging setup.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os
from pathlib import Path

from roadqueue import as_float, as_int, is_true

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Django refuses to start without a secret key, even though nothing here signs data.
INSECURE_KEY = "django-insecure-roadqueue-numerical-analysis-only"
SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", INSECURE_KEY)

DEBUG = is_true(os.getenv("DJANGO_DEBUG", "false"))


# Application definition

INSTALLED_APPS = [
    "apps.core.apps.CoreConfig",
    "apps.diagram.apps.DiagramConfig",
    "apps.section.apps.SectionConfig",
    "apps.tandem.apps.TandemAppConfig",
    "apps.oracle.apps.OracleConfig",
    "apps.cli.apps.CliConfig",
]

# No persistence: every artifact is written to files named by the run configuration.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = os.getenv("DJANGO_LANGUAGE_CODE", "en-us")

TIME_ZONE = os.getenv("DJANGO_TIME_ZONE", "UTC")

USE_I18N = True

USE_TZ = True


# Numerical defaults. Explicit arguments passed to the services always win.

# Tandem tolerance in veh/h is this factor times q_max of section 1.
ROADQUEUE_TOL_FACTOR = as_float(os.getenv("ROADQUEUE_TOL_FACTOR"), 1e-6)

ROADQUEUE_MAX_ITER = as_int(os.getenv("ROADQUEUE_MAX_ITER"), 10_000)

# Consecutive 2-cycle detections needed before the iteration is declared oscillatory.
ROADQUEUE_OSCILLATION_WINDOW = as_int(os.getenv("ROADQUEUE_OSCILLATION_WINDOW"), 3)

# Upper bound on (c1 + 1) * (c2 + 1) for the dense joint-chain solve.
ROADQUEUE_ORACLE_MAX_STATES = as_int(os.getenv("ROADQUEUE_ORACLE_MAX_STATES"), 40_000)

# Significant digits of floats in CSV and JSON artifacts.
ROADQUEUE_FLOAT_DIGITS = as_int(os.getenv("ROADQUEUE_FLOAT_DIGITS"), 12)

ROADQUEUE_SWEEP_WORKERS = as_int(os.getenv("ROADQUEUE_SWEEP_WORKERS"), 1)


# Log settings
LOG_LEVEL = os.getenv("ROADQUEUE_LOG_LEVEL", "DEBUG" if DEBUG else "INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            # https://docs.python.org/3/library/logging.html#logrecord-attributes
            "format": "{levelname} [{asctime}] -- {message}",
            "style": "{",
        }
    },
    "handlers": {
        "console": {
            "level": LOG_LEVEL,
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "django": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": True,
        },
        "apps": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
}
