"""
Django settings for the pointscat project.

Everything is read from the environment (optionally through a .env file
next to manage.py) so batch runs can be tuned without code changes.
"""

from pathlib import Path
import os

from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')

SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'django-insecure-pointscat-batch-only')

DEBUG = os.getenv('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'rest_framework',
    'numerics',
    'extension',
    'scattering',
    'eft',
    'trap',
    'cli',
]

# No models anywhere; sqlite only keeps Django's checks quiet
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Serializers are used for parameter files only, never behind a view
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
}

# ===========================================
# Numerical tolerances
# ===========================================
# User-supplied joining parameters are decimal, so the determinant check is loose
POINTSCAT_CONSTRAINT_TOL = float(os.getenv('POINTSCAT_CONSTRAINT_TOL', '1e-9'))
POINTSCAT_INTERNAL_TOL = float(os.getenv('POINTSCAT_INTERNAL_TOL', '1e-12'))
POINTSCAT_ROOT_MAXITER = int(os.getenv('POINTSCAT_ROOT_MAXITER', '200'))
POINTSCAT_DEDUP_TOL = float(os.getenv('POINTSCAT_DEDUP_TOL', '1e-8'))

# 0 = one worker per CPU
POINTSCAT_THREADS = int(os.getenv('POINTSCAT_THREADS', '0'))

# ===========================================
# Logging
# ===========================================
POINTSCAT_LOG_LEVEL = os.getenv('POINTSCAT_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': POINTSCAT_LOG_LEVEL,
            'propagate': False,
        }
        for app in ('numerics', 'extension', 'scattering', 'eft', 'trap', 'cli')
    },
}

# ===========================================
# Celery Configuration (Redis as broker)
# ===========================================
# Eager by default: sweeps run in-process unless a worker is deployed
CELERY_TASK_ALWAYS_EAGER = os.getenv('CELERY_TASK_ALWAYS_EAGER', 'True') == 'True'
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_BROKER_URL = os.getenv('CELERY_BROKER_URL', 'redis://localhost:6379/0')
CELERY_RESULT_BACKEND = os.getenv('CELERY_RESULT_BACKEND', 'redis://localhost:6379/0')
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = 'UTC'
CELERY_TASK_TRACK_STARTED = True
CELERY_TASK_TIME_LIMIT = 30 * 60  # 30 minutes max per sweep point
