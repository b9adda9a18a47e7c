import os

from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'apps.core.settings')

app = Celery('melnikov')

# chaves com prefixo CELERY_ em apps/core/settings.py
app.config_from_object('django.conf:settings', namespace='CELERY')

# varreduras em apps/<domínio>/tasks.py
app.autodiscover_tasks()
