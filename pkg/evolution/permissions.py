from rest_framework import permissions


class IsSuperUserOrReadOnly(permissions.BasePermission):
    """
    Anyone may read stored results; only superusers may delete them.
    """
    def has_permission(self, request, view):
        if request.method in permissions.SAFE_METHODS:
            return True
        return bool(request.user and request.user.is_superuser)
