from django.apps import AppConfig


class EftConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'eft'
