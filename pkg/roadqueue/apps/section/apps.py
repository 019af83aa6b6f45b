from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class SectionConfig(AppConfig):
    name = 'apps.section'
    verbose_name = _('Single section analysis')
