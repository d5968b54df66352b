"""
Django settings for the mtlab project.

Every deploy-time value is read from the environment (or a `.env` file) through python-decouple. The defaults are
good enough for a local desk setup with an sqlite database.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

from pathlib import Path

import decouple

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = decouple.config('SECRET_KEY', default='insecure-mtlab-development-key')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = decouple.config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = decouple.config('ALLOWED_HOSTS', default='localhost,127.0.0.1', cast=decouple.Csv())


# Application definition

INSTALLED_APPS = [
    'evolution.apps.EvolutionConfig',
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
    'rest_framework',
]

REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [
        'rest_framework.authentication.SessionAuthentication',
    ],
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PERMISSION_CLASSES': [
        'rest_framework.permissions.IsAuthenticatedOrReadOnly',
    ],
}

BROWSABLE_API = decouple.config('BROWSABLE_API', default=False, cast=bool)
if BROWSABLE_API:
    REST_FRAMEWORK['DEFAULT_RENDERER_CLASSES'] += [
        'rest_framework.renderers.BrowsableAPIRenderer',
    ]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'mtlab.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

WSGI_APPLICATION = 'mtlab.wsgi.application'


# Database
# https://docs.djangoproject.com/en/4.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': decouple.config('DB_ENGINE', default='django.db.backends.sqlite3'),
        'NAME': decouple.config('DB_NAME', default=str(BASE_DIR / 'db.sqlite3')),
        'USER': decouple.config('DB_USER', default=None),
        'PASSWORD': decouple.config('DB_PASSWORD', default=None),
        'HOST': decouple.config('DB_HOST', default=None),
        'PORT': decouple.config('DB_PORT', default=None),
    }
}


# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = decouple.config('LANGUAGE_CODE', default='en-us')

TIME_ZONE = decouple.config('TIME_ZONE', default='UTC')

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.AutoField'

STATIC_URL = decouple.config('STATIC_URL', default='/static/')
STATIC_ROOT = decouple.config('STATIC_ROOT', default=str(BASE_DIR / 'static'))

# If serving from a subdirectory, you may want to set FORCE_SCRIPT_NAME
FORCE_SCRIPT_NAME = decouple.config('FORCE_SCRIPT_NAME', default=None)


# Logging

LOG_LEVEL = decouple.config('LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'evolution': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Experiment defaults. Each value can be overridden with an environment variable MFLTGA_<NAME>.

MFLTGA = {
    'POP_SIZE': decouple.config('MFLTGA_POP_SIZE', default=100, cast=int),
    'MAX_EVALS': decouple.config('MFLTGA_MAX_EVALS', default=10 ** 6, cast=int),
    'RUNS': decouple.config('MFLTGA_RUNS', default=10, cast=int),
    'SEED': decouple.config('MFLTGA_SEED', default=42, cast=int),
    'MAX_P': decouple.config('MFLTGA_MAX_P', default=10, cast=int),
    'MUTATION_RATE': decouple.config('MFLTGA_MUTATION_RATE', default=0.05, cast=float),
    'RMP': decouple.config('MFLTGA_RMP', default=0.5, cast=float),
    'TRACE_EVERY': decouple.config('MFLTGA_TRACE_EVERY', default=1, cast=int),
    'RESULTS_DIR': decouple.config('MFLTGA_RESULTS_DIR', default='results'),
    'WORKERS': decouple.config('MFLTGA_WORKERS', default=1, cast=int),
}
