from django.conf import settings

from motivic.exceptions import CapacityError


def check_limit(what, size, setting_name):
    """Raise CapacityError when `size` is above the WORKBENCH_MAX_* setting"""
    limit = getattr(settings, setting_name)
    if size > limit:
        raise CapacityError(what, size, limit)
    return size


def tolerance():
    return settings.WORKBENCH_FLOAT_TOLERANCE
