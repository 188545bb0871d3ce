from celery import Celery
import logging

from qroute import config

logger = logging.getLogger(__name__)

broker_url = config.broker_url()
backend_url = config.result_backend()

logger.debug(f"QROUTE_BROKER_URL from env: '{broker_url}'")
logger.debug(f"QROUTE_RESULT_BACKEND from env: '{backend_url}'")

if broker_url and not backend_url:
    logger.critical("QROUTE_RESULT_BACKEND is required when QROUTE_BROKER_URL is set")
    raise ValueError("QROUTE_RESULT_BACKEND is required when QROUTE_BROKER_URL is set")


celery_app = Celery(
    "qroute",
    broker=broker_url or "memory://",
    backend=backend_url,
    include=["qroute.workers.consumer"],
)

celery_app.conf.task_serializer = "json"
celery_app.conf.result_serializer = "json"
celery_app.conf.accept_content = ["json"]
celery_app.conf.timezone = "UTC"
celery_app.conf.enable_utc = True
celery_app.conf.task_acks_late = True

# No broker: run compare jobs in-process.
if not broker_url:
    celery_app.conf.task_always_eager = True
    celery_app.conf.task_eager_propagates = True
