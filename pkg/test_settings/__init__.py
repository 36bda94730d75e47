# -*- coding: utf-8 -*-
"""Django project for the gaze-mil apps: settings, admin URLs and the run registry database."""
