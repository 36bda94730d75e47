# -*- coding: utf-8 -*-
"""Re-render the gaze maps of a dataset from its fixation files with another sigma."""

# Standard Library
import logging
import os
import shutil

# Project
from common.config import read_key_value_file
from common.config import write_key_value_file
from common.exceptions import ConfigurationError
from gaze_render.constants import DEFAULT_SIGMA
from gaze_render.files import read_fixations_csv
from gaze_render.files import save_gaze_map_image
from gaze_render.rendering import GaussianSpec
from gaze_render.rendering import quantize_gaze_map
from gaze_render.rendering import render_gaze_map
from synthdata.constants import CONFIG_ECHO_FILENAME
from synthdata.manifest import DatasetManifest
from synthdata.manifest import ManifestEntry
from synthdata.manifest import load_fundus_image
from train_eval.management.pipeline import PipelineCommand


class Command(PipelineCommand):
    """
    Writes a new dataset under --out that shares the source images.

    Image paths in the new manifest point back at the source; fixation and lesion
    files are copied so bags built from the new dataset keep their instance labels.
    """

    help = "Render gaze maps from stored fixations with a chosen sigma."

    def add_pipeline_arguments(self, parser):  # noqa: D102
        parser.add_argument("--data", required=True, help="dataset directory")
        parser.add_argument("--sigma", type=float, default=DEFAULT_SIGMA)

    def run(self, config, out_dir, options):  # noqa: D102
        source = DatasetManifest.read(options["data"])
        if source.root.resolve() == out_dir.resolve():
            raise ConfigurationError("--out must differ from --data; maps are not overwritten.")
        spec = GaussianSpec(options["sigma"])
        manifest = DatasetManifest(root=out_dir)
        for entry in source.entries:
            image = load_fundus_image(source.root / entry.image)
            fixations = read_fixations_csv(entry.fixations_path(source.root))
            gaze_map = render_gaze_map(fixations, image.width, image.height, spec)
            new_entry = ManifestEntry(
                image=os.path.relpath(source.root / entry.image, out_dir),
                gaze=entry.gaze,
                label=entry.label,
                domain=entry.domain,
                split=entry.split,
            )
            save_gaze_map_image(quantize_gaze_map(gaze_map), out_dir / new_entry.gaze)
            for sidecar in (entry.fixations_path, entry.lesions_path):
                if sidecar(source.root).exists():
                    sidecar(out_dir).parent.mkdir(parents=True, exist_ok=True)
                    shutil.copyfile(sidecar(source.root), sidecar(out_dir))
            manifest.entries.append(new_entry)
        manifest.write()
        echo = source.root / CONFIG_ECHO_FILENAME
        if echo.exists():
            values = read_key_value_file(echo)
            values["sigma"] = spec.sigma
            write_key_value_file(out_dir / CONFIG_ECHO_FILENAME, values)

        log_info = f"Rendered {len(manifest.entries)} gaze maps with sigma {spec.sigma}."
        logging.info(log_info)
        return f"{log_info}\nmanifest: {manifest.path}"
