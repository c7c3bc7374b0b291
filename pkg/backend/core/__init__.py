from __future__ import absolute_import, unicode_literals

# Importing the Celery app here binds shared_task sweep points to it
# as soon as Django starts.
from .celery import app as celery_app

__all__ = ('celery_app',)
