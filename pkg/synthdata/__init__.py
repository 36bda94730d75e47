# -*- coding: utf-8 -*-
"""Synthetic fundus-like images, fixation streams and dataset manifests."""
