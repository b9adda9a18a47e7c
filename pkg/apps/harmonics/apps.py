from django.apps import AppConfig


class HarmonicsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.harmonics'
