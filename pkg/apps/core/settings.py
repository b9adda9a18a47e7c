from pathlib import Path
import os

from decouple import config
from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config('SECRET_KEY', default='melnikov-local-only')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django_celery_results',
    'rest_framework',
    'apps.core',
    'apps.configurations',
    'apps.harmonics',
    'apps.quadrature',
    'apps.melnikov',
    'apps.dynamics',
    'apps.asymptotics',
    'apps.catalog',
]

# Database
# Only the Celery result backend writes here.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': config('DATABASE_PATH', default=str(BASE_DIR / 'db.sqlite3')),
    }
}

LANGUAGE_CODE = 'pt-br'

TIME_ZONE = 'America/Sao_Paulo'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# NUMERICAL DEFAULTS
# Library functions take explicit parameters; commands and services read
# their defaults from here.

MELNIKOV_THREADS = config('MELNIKOV_THREADS', default=os.cpu_count() or 1, cast=int)

MELNIKOV_QUAD_TOL = config('MELNIKOV_QUAD_TOL', default=1e-10, cast=float)

MELNIKOV_QUAD_BUDGET = config('MELNIKOV_QUAD_BUDGET', default=10_000_000, cast=int)

MELNIKOV_ODE_TOL = config('MELNIKOV_ODE_TOL', default=1e-10, cast=float)

MELNIKOV_ZERO_THRESHOLD = config('MELNIKOV_ZERO_THRESHOLD', default=1e-11, cast=float)

MELNIKOV_LOG_LEVEL = config('MELNIKOV_LOG_LEVEL', default='WARNING')

# LOGGING
# Reports go to stdout, so every log record goes to stderr.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'console': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'console',
        },
    },
    'loggers': {
        'apps': {
            'handlers': ['stderr'],
            'level': MELNIKOV_LOG_LEVEL,
            'propagate': False,
        },
        'celery': {
            'handlers': ['stderr'],
            'level': 'WARNING',
        },
    },
}

# CELERY SETTINGS

CELERY_BROKER_URL = config('CELERY_BROKER_URL', default='memory://')

CELERY_ACCEPT_CONTENT = ['json']

CELERY_RESULT_SERIALIZER = 'json'

CELERY_TASK_SERIALIZER = 'json'

CELERY_TIME_ZONE = TIME_ZONE

CELERY_TASK_ALWAYS_EAGER = config('CELERY_TASK_ALWAYS_EAGER', default=False, cast=bool)

# CELERY RESULTS
# Backend de resultados utilizando a base de dados do Django

CELERY_RESULT_BACKEND = 'django-db'

CELERY_RESULT_EXTENDED = True
