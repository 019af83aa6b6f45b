from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class DiagramConfig(AppConfig):
    name = 'apps.diagram'
    verbose_name = _('Fundamental diagrams')
