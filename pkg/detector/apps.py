from django.apps import AppConfig


class DetectorAppConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'detector'
    verbose_name = 'Periodicity detector'
