from django.apps import AppConfig


class SquaresConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'squares'
