from django.apps import AppConfig


class EvolutionConfig(AppConfig):
    name = 'evolution'
    verbose_name = 'Multitask evolution'
