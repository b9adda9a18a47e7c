from django.apps import AppConfig


class MelnikovConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.melnikov'
