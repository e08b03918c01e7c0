"""Request handler - middleground between the CLI (frontend) and the workflows (backend)."""

import dataclasses
import logging
from typing import Any, Dict

from config.experiment import ExperimentConfig, parse_config
from db.storage import TableStorage
from errors import ConfigError, OwcLabError
from models.fiber import FiberParams
from services.workflows import cmd_estimate, cmd_extrapolate, cmd_fiber, cmd_loadplan, cmd_simulate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def _error(message: str, exit_code: int) -> Dict[str, Any]:
    return {"status": "error", "message": message, "exit_code": exit_code}


class RequestHandler:
    """Routes dict requests to the workflows and returns dict responses."""

    def __init__(self):
        self._routes = {
            "simulate": self._simulate,
            "extrapolate": self._extrapolate,
            "fiber": self._fiber,
            "loadplan": self._loadplan,
            "estimate": self._estimate,
        }

    def handle(self, request: Dict[str, Any]) -> Dict[str, Any]:
        action = request.get("action", "")
        handler = self._routes.get(action)
        if handler is None:
            return _error(f"Unknown action: {action}", EXIT_CONFIG)
        try:
            data = handler(request.get("data") or {})
        except ConfigError as e:
            logger.error("Configuration error: %s", e)
            return _error(str(e), EXIT_CONFIG)
        except OwcLabError as e:
            logger.error("%s failed: %s", action, e)
            notes = getattr(e, "__notes__", [])
            return _error("; ".join([str(e)] + list(notes)), EXIT_RUNTIME)
        except Exception as e:
            logger.exception("Unexpected failure in %s", action)
            return _error(f"Unexpected error: {e}", EXIT_RUNTIME)
        return {"status": "success", "message": f"{action} finished", "data": data, "exit_code": EXIT_OK}

    # Config assembly
    @staticmethod
    def _load_config(data: Dict[str, Any]) -> ExperimentConfig:
        text = data.get("config_text", "")
        path = data.get("config_path")
        if path:
            try:
                with open(path, encoding="utf-8") as f:
                    text = f.read()
            except OSError as e:
                raise ConfigError(f"cannot read config file: {e.strerror}", path) from None
        cfg = parse_config(text)

        run = cfg.run
        if data.get("seeds"):
            run = dataclasses.replace(run, seeds=tuple(int(s) for s in data["seeds"]))
        if data.get("output_dir"):
            run = dataclasses.replace(run, output_dir=data["output_dir"])
        settings = cfg.preset_settings
        if data.get("noiseless"):
            settings = dataclasses.replace(settings, noise_std=0.0, stages="flat", target_profile="none")
        if run is not cfg.run or settings is not cfg.preset_settings:
            cfg = dataclasses.replace(cfg, run=run, preset_settings=settings)
        return cfg

    # Actions
    def _simulate(self, data: Dict[str, Any]) -> Dict[str, Any]:
        cfg = self._load_config(data)
        return cmd_simulate(
            cfg,
            dump_waveforms=bool(data.get("dump_waveforms")),
            drive_scales=data.get("drive_scales") or (),
        )

    def _extrapolate(self, data: Dict[str, Any]) -> Dict[str, Any]:
        cfg = self._load_config(data)
        return cmd_extrapolate(cfg, profile_path=data.get("profile"), anchored=data.get("anchored"))

    def _fiber(self, data: Dict[str, Any]) -> Dict[str, Any]:
        fields = {k: data[k] for k in ("d_coeff", "sigma_lambda", "emb", "alpha", "length") if data.get(k) is not None}
        params = FiberParams(**fields)
        storage = TableStorage(data["output_dir"]) if data.get("output_dir") else None
        return cmd_fiber(params, data.get("bandwidth"), data.get("spectrum"), storage, data.get("bias_ma"))

    def _loadplan(self, data: Dict[str, Any]) -> Dict[str, Any]:
        cfg = self._load_config(data)
        return cmd_loadplan(cfg, data["profile"])

    def _estimate(self, data: Dict[str, Any]) -> Dict[str, Any]:
        cfg = self._load_config(data)
        return cmd_estimate(cfg, data["tx"], data["rx"])
