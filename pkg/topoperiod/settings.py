"""
Django settings for the topoperiod project.

Periodicity detection over symbolic time-series of Internet topology
measurements (traceroute paths and BGP reachability states).

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    'DJANGO_SECRET_KEY',
    'django-insecure-topoperiod-local-analysis-key',
)

DEBUG = os.environ.get('DJANGO_DEBUG', '0') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'series',
    'detector',
    'validation',
    'traceroute',
    'bgp',
    'cli',
]


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases
#
# PostgreSQL when POSTGRES_DB is exported (shared result store), a local
# SQLite file otherwise.

if os.environ.get('POSTGRES_DB'):
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.postgresql',
            'NAME': os.environ.get('POSTGRES_DB', 'topoperiod'),
            'USER': os.environ.get('POSTGRES_USER', 'topoperiod'),
            'PASSWORD': os.environ.get('POSTGRES_PASSWORD', 'topoperiod'),
            'HOST': os.environ.get('POSTGRES_HOST', '127.0.0.1'),
            'PORT': int(os.environ.get('POSTGRES_PORT', '5432')),
        }
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'topoperiod.sqlite3',
        }
    }


TIME_ZONE = 'UTC'

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Periodicity analysis defaults. Every key can be overridden per run by the
# JSON config file or command-line flags of the management commands.

PERIODICITY = {
    # detector
    'MAX_LAG_FRACTION': float(os.environ.get('PERIODICITY_MAX_LAG_FRACTION', 1 / 3)),
    'PEAK_THRESHOLD': float(os.environ.get('PERIODICITY_THETA', '0.25')),
    'PEAK_SIGMAS': float(os.environ.get('PERIODICITY_PEAK_SIGMAS', '3.0')),
    'CLUSTER_Y_TOLERANCE': float(os.environ.get('PERIODICITY_EPS_Y', '0.15')),
    'GAP_CV_THRESHOLD': float(os.environ.get('PERIODICITY_GAP_CV', '0.10')),
    'MAX_OUTLIER_FRACTION': float(os.environ.get('PERIODICITY_MAX_OUTLIERS', '0.20')),
    'MIN_REPETITIONS': int(os.environ.get('PERIODICITY_MIN_REPS', '3')),
    'TOLERANCE_THRESHOLD': int(os.environ.get('PERIODICITY_TOLERANCE_THRESHOLD', '5')),
    'TOLERANCE_FRACTION': float(os.environ.get('PERIODICITY_TOLERANCE_FRACTION', '0.10')),
    'CHANCE_ALPHA': float(os.environ.get('PERIODICITY_CHANCE_ALPHA', '0.01')),
    # traceroute cadence (RIPE Atlas anchoring measurements)
    'TRACEROUTE_STEP': int(os.environ.get('PERIODICITY_TRACEROUTE_STEP', '900')),
    # bgp
    'STATE_THRESHOLD': float(os.environ.get('PERIODICITY_STATE_THRESHOLD', '0.95')),
    'BGP_STEP': int(os.environ.get('PERIODICITY_BGP_STEP', '1')),
    # validation
    'OVERLAP_THRESHOLD': float(os.environ.get('PERIODICITY_OVERLAP_THRESHOLD', '0.5')),
    # execution
    'WORKERS': int(os.environ.get('PERIODICITY_WORKERS', '1')),
}

ATLAS_API_URL = os.environ.get('ATLAS_API_URL', 'https://atlas.ripe.net/api/v2/')


# Logging configuration

LOG_DIR = BASE_DIR / 'logs'
LOG_DIR.mkdir(exist_ok=True)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': 'INFO',
            'class': 'logging.FileHandler',
            'filename': LOG_DIR / 'topoperiod.log',
            'formatter': 'verbose',
        },
        'console': {
            'level': os.environ.get('PERIODICITY_CONSOLE_LOG_LEVEL', 'WARNING'),
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'detector': {
            'handlers': ['file', 'console'],
            'level': 'INFO',
            'propagate': False,
        },
        'series': {
            'handlers': ['file', 'console'],
            'level': 'INFO',
            'propagate': False,
        },
        'validation': {
            'handlers': ['file', 'console'],
            'level': 'INFO',
            'propagate': False,
        },
        'traceroute': {
            'handlers': ['file', 'console'],
            'level': 'INFO',
            'propagate': False,
        },
        'bgp': {
            'handlers': ['file', 'console'],
            'level': 'INFO',
            'propagate': False,
        },
        'cli': {
            'handlers': ['file', 'console'],
            'level': 'INFO',
            'propagate': False,
        },
        'django': {
            'handlers': ['file', 'console'],
            'level': 'INFO',
            'propagate': False,
        },
    },
}
