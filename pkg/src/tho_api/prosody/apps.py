from django.apps import AppConfig


class ProsodyConfig(AppConfig):
    name = "tho_api.prosody"
    verbose_name = "Prosody toolkit"

    def ready(self):
        # Registers the setting_changed receiver.
        from . import conf  # noqa: F401
