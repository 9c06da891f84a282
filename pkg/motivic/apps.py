from django.apps import AppConfig


class MotivicConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'motivic'
    verbose_name = 'Мотивные экспоненциальные функции'
