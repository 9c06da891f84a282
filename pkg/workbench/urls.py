"""
URL configuration for the motivic workbench project.

The admin lists recorded sweep runs; /reports/ serves their stored JSON reports.
"""
from django.contrib import admin
from django.urls import path, include

urlpatterns = [
    path('admin/', admin.site.urls),
    path('reports/', include('motivic.urls')),
]
