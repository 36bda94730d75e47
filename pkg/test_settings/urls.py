# -*- coding: utf-8 -*-
"""test_settings URL Configuration: the admin, where the run registry is browsed."""
# Django
from django.contrib import admin
from django.urls import path

urlpatterns = [
    path("admin/", admin.site.urls),
]
