from django.apps import AppConfig


class BgpConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'bgp'
    verbose_name = 'BGP ingest'
