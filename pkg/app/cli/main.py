"""
VCSEL optical-wireless link laboratory - CLI frontend.

Runs the batch workflows in-process through the backend's RequestHandler:
    python main.py simulate --config ../../configs/config_i_ber_rate.toml
    python main.py extrapolate --anchored Config-I
    python main.py fiber --sigma-lambda 0.351 --bandwidth 16e9
"""

import argparse
import os
import sys

_CLI_DIR = os.path.dirname(os.path.abspath(__file__))
_BACKEND_DIR = os.path.join(os.path.dirname(_CLI_DIR), "backend")
for _d in (_CLI_DIR, _BACKEND_DIR):
    if _d not in sys.path:
        sys.path.insert(0, _d)

import logger_setup  # noqa: F401
from api.request_handler import RequestHandler
from ui.display import Display


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_config_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", dest="config_path", help="experiment TOML file (defaults apply when omitted)")
    parser.add_argument("--seeds", type=_int_list, help="comma-separated seeds, overriding [run].seeds")
    parser.add_argument("--output", dest="output_dir", help="output directory, overriding [run].output_dir")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="owclab", description="VCSEL optical-wireless link laboratory")
    sub = parser.add_subparsers(dest="action", required=True)

    p = sub.add_parser("simulate", help="estimate, load and stream; BER vs rate tables")
    _add_config_args(p)
    p.add_argument("--noiseless", action="store_true", help="flat, noise-free link")
    p.add_argument("--dump-waveforms", action="store_true", help="also save tx.npy and rx.npy")
    p.add_argument("--drive-scales", type=_float_list, help="comma-separated drive scales (mA) to sweep")

    p = sub.add_parser("extrapolate", help="PWL fit, 0 dB extrapolation and rate bounds")
    _add_config_args(p)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--profile", help="snr_profile.csv to fit")
    source.add_argument("--anchored", choices=["Config-I", "Config-II"], help="use the anchored reference profile")

    p = sub.add_parser("fiber", help="MMF dispersion report and maximum reach")
    width = p.add_mutually_exclusive_group(required=True)
    width.add_argument("--sigma-lambda", type=float, help="RMS spectral width (nm)")
    width.add_argument("--spectrum", help="two-column spectrum file (wavelength_nm power)")
    width.add_argument("--bias-ma", type=float, help="measured width at a bias current (5, 10 or 15 mA)")
    p.add_argument("--d-coeff", type=float, help="chromatic dispersion (ps/(nm km))")
    p.add_argument("--emb", type=float, help="effective modal bandwidth (MHz km)")
    p.add_argument("--alpha", type=float, help="attenuation (dB/km)")
    p.add_argument("--length", type=float, help="fiber length (km)")
    p.add_argument("--bandwidth", type=float, help="signal bandwidth B (Hz) for the maximum reach")
    p.add_argument("--output", dest="output_dir", help="also write fiber_report.csv here")

    p = sub.add_parser("loadplan", help="Hughes-Hartogs plan for a profile CSV")
    _add_config_args(p)
    p.add_argument("--profile", required=True, help="snr_profile.csv")

    p = sub.add_parser("estimate", help="channel estimate from saved waveforms")
    _add_config_args(p)
    p.add_argument("--tx", required=True, help="transmitted drive (.npy)")
    p.add_argument("--rx", required=True, help="received photocurrent (.npy)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    data = {k: v for k, v in vars(args).items() if k != "action" and v is not None}
    handler = RequestHandler()
    response = handler.handle({"action": args.action, "data": data})
    Display().show_response(args.action, response)
    return response.get("exit_code", 0)


if __name__ == "__main__":
    sys.exit(main())
