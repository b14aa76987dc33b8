"""Home of the `GridField` class."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import StateZ
from ricci_hessian_lib.exceptions import ValidationError
from ricci_hessian_lib.profiles import ProfileParams
from ricci_hessian_lib.evolution._slice import (
    Slice,
    SliceDiagnostics,
    check_lambda_grid,
)


FIELD_NAMES = ("Q", "S", "B", "G")
MANIFEST_FILE = "manifest.json"
CSV_FLOAT_FORMAT = "%.17g"


def field_frame(
    first_axis: NDArray[np.float64],
    second_axis: NDArray[np.float64],
    values: NDArray[np.float64],
    columns: tuple[str, str] = ("tau", "lambda"),
) -> pd.DataFrame:
    """Flattens a two-dimensional field into a long table.

    The table has one row per grid point, ordered with the first axis
    varying slowest, and the columns ``columns + ("value",)``.
    """
    first, second = np.meshgrid(first_axis, second_axis, indexing="ij")
    return pd.DataFrame(
        {
            columns[0]: first.ravel(),
            columns[1]: second.ravel(),
            "value": np.asarray(values, dtype=float).ravel(),
        }
    )


@dataclass(slots=True, frozen=True)
class GridField:
    """The unknowns on a rectangular ``(τ, λ)`` grid.

    Row ``i`` of every field array is the slice ``τ = tau_grid[i]``.

    Attributes:
        tau_grid:
            Uniform τ-grid with ``n_tau`` points (possibly decreasing).
        lambda_grid:
            Uniform λ-grid with ``n_lam`` points, shared by all slices.
        q:
            ``Q`` with shape ``(n_tau, n_lam)``.
        s:
            ``S`` with shape ``(n_tau, n_lam)``.
        b:
            ``B`` with shape ``(n_tau, n_lam)``.
        g:
            ``G`` with shape ``(n_tau, n_lam)``.
        profile:
            The coefficient profile.
        constraint_history:
            Array of shape ``(n_tau, 2)`` with the norms of the constraints
            ``C1`` and ``C2`` on each slice.
        diagnostics:
            One :class:`SliceDiagnostics` per slice.
        edge_bands:
            Number of columns excluded on each side from the reported norms
            of each slice.
        truncated:
            Whether the computation stopped before reaching the requested
            final ``τ``.
        truncation_reason:
            Message of the error that stopped it, if any.
    """

    tau_grid: NDArray[np.float64]
    lambda_grid: NDArray[np.float64]
    q: NDArray[np.float64]
    s: NDArray[np.float64]
    b: NDArray[np.float64]
    g: NDArray[np.float64]
    profile: ProfileParams
    constraint_history: NDArray[np.float64] = field(
        default_factory=lambda: np.zeros((0, 2))
    )
    diagnostics: list[SliceDiagnostics] = field(default_factory=list)
    edge_bands: list[int] = field(default_factory=list)
    truncated: bool = False
    truncation_reason: str | None = None

    def __post_init__(self):
        check_lambda_grid(self.lambda_grid)
        shape = (np.size(self.tau_grid), np.size(self.lambda_grid))
        for name, values in zip(FIELD_NAMES, self.fields()):
            if np.shape(values) != shape:
                raise ValidationError(
                    f"Field {name} has shape {np.shape(values)}, expected "
                    f"{shape}."
                )

    @property
    def n_tau(self) -> int:
        """Number of slices."""
        return int(np.size(self.tau_grid))

    @property
    def n_lam(self) -> int:
        """Number of λ-grid points."""
        return int(np.size(self.lambda_grid))

    @property
    def tau_spacing(self) -> float:
        """The signed τ spacing, zero for a single slice."""
        if self.n_tau < 2:
            return 0.0
        return float(self.tau_grid[1] - self.tau_grid[0])

    @property
    def lambda_spacing(self) -> float:
        """The λ spacing."""
        return float(self.lambda_grid[1] - self.lambda_grid[0])

    def fields(self) -> tuple[NDArray[np.float64], ...]:
        """Returns ``(q, s, b, g)``."""
        return self.q, self.s, self.b, self.g

    @property
    def state(self) -> StateZ:
        """The unknowns as a :class:`StateZ` of two-dimensional arrays."""
        return StateZ(self.q, self.s, self.b, self.g)

    @property
    def pi(self) -> NDArray[np.float64]:
        """``Π = QB - S²`` on the grid."""
        return self.q * self.b - self.s**2

    @property
    def slices(self) -> list[Slice]:
        """The rows of the grid as :class:`Slice` objects."""
        return [self.slice(i) for i in range(self.n_tau)]

    def slice(self, index: int) -> Slice:
        """Returns row ``index`` as a :class:`Slice`."""
        return Slice(
            tau=float(self.tau_grid[index]),
            lambda_grid=self.lambda_grid,
            state=StateZ(
                self.q[index], self.s[index], self.b[index], self.g[index]
            ),
            profile=self.profile,
        )

    @property
    def verified_tau_range(self) -> tuple[float, float]:
        """The τ-range actually computed (shorter than requested when the
        computation was truncated)."""
        return float(self.tau_grid[0]), float(self.tau_grid[-1])

    @property
    def verified_lambda_range(self) -> tuple[float, float]:
        """The λ-range outside the edge band of the last slice."""
        band = self.edge_bands[-1] if self.edge_bands else 0
        band = min(band, (self.n_lam - 1) // 2)
        return (
            float(self.lambda_grid[band]),
            float(self.lambda_grid[self.n_lam - 1 - band]),
        )

    def to_frames(self) -> dict[str, pd.DataFrame]:
        """Returns one long ``(tau, lambda, value)`` table per field,
        including ``Pi``."""
        frames = {
            name: field_frame(self.tau_grid, self.lambda_grid, values)
            for name, values in zip(FIELD_NAMES, self.fields())
        }
        frames["Pi"] = field_frame(self.tau_grid, self.lambda_grid, self.pi)
        return frames

    def manifest(self) -> dict[str, Any]:
        """Returns the grid metadata written by :meth:`save`."""
        return {
            "tau_grid": np.asarray(self.tau_grid).tolist(),
            "lambda_grid": np.asarray(self.lambda_grid).tolist(),
            "profile": self.profile.to_dict(),
            "constraint_history": np.asarray(
                self.constraint_history
            ).tolist(),
            "diagnostics": [d._asdict() for d in self.diagnostics],
            "edge_bands": list(self.edge_bands),
            "truncated": self.truncated,
            "truncation_reason": self.truncation_reason,
            "fields": {name: f"{name}.csv" for name in FIELD_NAMES},
        }

    def save(self, directory: str | os.PathLike) -> list[str]:
        """Writes one CSV per field and ``manifest.json`` to ``directory``.

        Returns:
            The names of the files written.
        """
        os.makedirs(directory, exist_ok=True)
        written = []
        for name, frame in self.to_frames().items():
            filename = f"{name}.csv"
            frame.to_csv(
                os.path.join(directory, filename),
                index=False,
                float_format=CSV_FLOAT_FORMAT,
            )
            written.append(filename)
        with open(
            os.path.join(directory, MANIFEST_FILE), "w", encoding="utf-8"
        ) as f:
            json.dump(self.manifest(), f, indent=2)
        written.append(MANIFEST_FILE)
        return written

    @classmethod
    def load(cls, directory: str | os.PathLike) -> GridField:
        """Reads a grid written by :meth:`save`.

        Raises:
            ValidationError: If the files are missing or inconsistent.
        """
        manifest_path = os.path.join(directory, MANIFEST_FILE)
        try:
            with open(manifest_path, encoding="utf-8") as f:
                manifest = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError(
                f"Could not read {manifest_path}: {e}"
            ) from e
        tau_grid = np.asarray(manifest["tau_grid"], dtype=float)
        lambda_grid = np.asarray(manifest["lambda_grid"], dtype=float)
        shape = (tau_grid.size, lambda_grid.size)
        arrays = []
        for name in FIELD_NAMES:
            filename = manifest.get("fields", {}).get(name, f"{name}.csv")
            try:
                frame = pd.read_csv(os.path.join(directory, filename))
            except OSError as e:
                raise ValidationError(f"Missing field file {filename}.") from e
            if len(frame) != shape[0] * shape[1]:
                raise ValidationError(
                    f"{filename} has {len(frame)} rows, expected "
                    f"{shape[0] * shape[1]}."
                )
            frame = frame.sort_values(["tau", "lambda"], kind="stable")
            values = frame["value"].to_numpy(dtype=float).reshape(shape)
            if tau_grid.size > 1 and tau_grid[1] < tau_grid[0]:
                values = values[::-1]
            arrays.append(values)
        history = np.asarray(
            manifest.get("constraint_history") or np.zeros((0, 2)),
            dtype=float,
        ).reshape(-1, 2)
        return cls(
            tau_grid,
            lambda_grid,
            *arrays,
            profile=ProfileParams.from_dict(manifest["profile"]),
            constraint_history=history,
            diagnostics=[
                SliceDiagnostics(**d) for d in manifest.get("diagnostics", [])
            ],
            edge_bands=list(manifest.get("edge_bands", [])),
            truncated=bool(manifest.get("truncated", False)),
            truncation_reason=manifest.get("truncation_reason"),
        )
