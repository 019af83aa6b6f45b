from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class TandemAppConfig(AppConfig):
    name = 'apps.tandem'
    verbose_name = _('Two sections in tandem')
