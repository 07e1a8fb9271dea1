import os
import dj_database_url

"""
Django settings for the omegapaste project.
"""
from dotenv import load_dotenv
load_dotenv()


from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('SECRET_KEY', 'unsafe-default-for-local')
DEBUG = os.environ.get('DEBUG', '') == '1'
ALLOWED_HOSTS = os.environ.get('ALLOWED_HOSTS', 'localhost').split(',')


INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
    "rest_framework",
    "schemes",
    "calculus",
    "witness",
    "cli",
]

MIDDLEWARE = []

# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

# 1. Try to read DATABASE_URL (hosted database / local override)
#    psycopg2-binary is only imported when it points at Postgres
DATABASE_URL = os.environ.get("DATABASE_URL")

if DATABASE_URL:
    DATABASES = {
        "default": dj_database_url.parse(
            DATABASE_URL,
            conn_max_age=600,
        )
    }

else:
    # 2. Fallback to a SQLite file next to manage.py
    DATABASES = {
        "default": {
            "ENGINE": "django.db.backends.sqlite3",
            "NAME": BASE_DIR / "db.sqlite3",
        }
    }

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# ------------------------------------------------------------
# Engine limits (enumeration cap, witness depth, random seed)
# ------------------------------------------------------------
OMEGAPASTE = {
    "MAX_CELLS": int(os.environ.get("OMEGAPASTE_MAX_CELLS", "2000")),
    "DEFAULT_DEPTH": int(os.environ.get("OMEGAPASTE_DEFAULT_DEPTH", "1")),
    "SEED": int(os.environ.get("OMEGAPASTE_SEED", "0")),
}

# ------------------------------------------------------------
# REST framework is used only for its serializers (JSON inputs)
# ------------------------------------------------------------
REST_FRAMEWORK = {
    "DEFAULT_RENDERER_CLASSES": (
        "rest_framework.renderers.JSONRenderer",
    ),
    "UNAUTHENTICATED_USER": None,
}

# ------------------------------------------------------------
# Logging
# ------------------------------------------------------------
LOG_LEVEL = os.environ.get("OMEGAPASTE_LOG_LEVEL", "WARNING").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "schemes": {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False},
        "calculus": {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False},
        "witness": {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False},
        "cli": {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False},
    },
}
