"""mtlab URL Configuration

The router exposes stored experiments and their run results read-only; the Django admin lives under admin/.
"""
from django.conf import settings
from django.contrib import admin
from django.urls import include, path
from rest_framework import routers

from evolution import views

router = routers.DefaultRouter()
router.register(r'experiments', views.ExperimentViewSet)
router.register(r'run-results', views.RunResultViewSet)

urlpatterns = [
    path('', include(router.urls)),
    path('admin/', admin.site.urls),
]

if settings.BROWSABLE_API:
    urlpatterns += [
        # Authentication endpoints for DRF's browsable API
        path('api-auth/', include('rest_framework.urls', namespace='rest_framework')),
    ]
