from eyedoc.service.app import create_app
from eyedoc.service.config import ServiceConfig, load_service_config

__all__ = ["create_app", "ServiceConfig", "load_service_config"]
