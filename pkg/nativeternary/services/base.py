from abc import ABC

from nativeternary.config import Settings, settings


class BaseService(ABC):
    def __init__(self, app_settings: Settings = settings):
        self.settings = app_settings

    @classmethod
    def get_instance(cls, *args, **kwargs):
        """
        Returns an instance of the service class.

        Commands build their services through this factory so tests can
        substitute another instance or settings object in one place.

        Usage:
            codec = TernaryCodec.get_instance(SchemeConfig())
            buffer = codec.encode(events)
        """
        return cls(*args, **kwargs)
