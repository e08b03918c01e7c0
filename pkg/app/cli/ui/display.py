"""Display - renders the RequestHandler's response envelopes in the terminal."""

import math


def _fmt(v) -> str:
    """Format a number compactly (72010587102.98 -> 7.201e+10, 0.5 -> 0.5)."""
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        return str(v)
    if isinstance(v, float) and (math.isnan(v) or math.isinf(v)):
        return str(v)
    if isinstance(v, int):
        return str(v)
    return f"{v:.6g}"


class Display:
    """Frontend renderer: one summary block per workflow response."""

    SEPARATOR = "=" * 50

    def show_response(self, action: str, response: dict) -> None:
        if response.get("status") != "success":
            self._show_error(response.get("message", "unknown error"))
            return
        data = response.get("data", {})
        print(self.SEPARATOR)
        print(f"  {action}")
        print(self.SEPARATOR)
        if action == "fiber":
            self._show_fiber(data)
        elif action == "simulate":
            self._show_simulate(data)
        elif action == "extrapolate":
            self._show_extrapolate(data)
        else:
            self._show_pairs({k: v for k, v in data.items() if k != "files"})
        self._show_files(data.get("files", []))

    def _show_simulate(self, data: dict):
        self._show_pairs(
            {
                "noise_std_mA": data["noise_std"],
                "plan_total_bits": data["plan_total_bits"],
                "plan_rate_Gbps": data["plan_rate_bps"] / 1e9,
            }
        )
        print(f"  {'target_ber':>10}  {'bits':>6}  {'rate_Gbps':>9}  {'measured_ber':>12}")
        for row in data.get("rows", []):
            print(
                f"  {row['target_ber']:>10.3g}  {row['total_bits']:>6d}  "
                f"{row['rate_bps'] / 1e9:>9.2f}  {row['measured_ber']:>12.3e}"
            )

    def _show_extrapolate(self, data: dict):
        self._show_pairs(
            {
                "f1_GHz": data["f1_hz"] / 1e9,
                "f2_GHz": data["f2_hz"] / 1e9,
                "f_ext_GHz": data["f_ext_hz"] / 1e9,
            }
        )
        for row in data.get("bounds", []):
            print(
                f"  BER {row['target_ber']:.3g}: bound(f_cutoff) = {row['bound_cutoff_bps'] / 1e9:.2f} Gb/s, "
                f"bound(f_ext) = {row['bound_ext_bps'] / 1e9:.2f} Gb/s"
            )

    def _show_fiber(self, data: dict):
        if data.get("mean_wavelength_nm") is not None:
            print(f"  mean_wavelength : {data['mean_wavelength_nm']:.3f} nm")
        for line in data["text"].splitlines():
            print(f"  {line}")

    def _show_pairs(self, pairs: dict):
        width = max((len(k) for k in pairs), default=0)
        for key, value in pairs.items():
            print(f"  {key.ljust(width)} : {_fmt(value)}")

    def _show_files(self, files):
        for path in files:
            print(f"  wrote {path}")

    def _show_error(self, message: str):
        print(f"Error: {message}")
