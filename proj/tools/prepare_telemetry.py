#!/usr/bin/env python3
# Copyright 2026 The fogvl Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds telemetry.csv from the raw predictive-maintenance tables.

Inputs (in --raw-dir): PdM_telemetry.csv, PdM_errors.csv, PdM_maint.csv,
PdM_failures.csv, PdM_machines.csv.

Output columns: datetime, machineID, 30 features, failure, where failure
names the component that fails within the label horizon, or "none".

Features: short and long rolling mean/std of volt, rotate, pressure and
vibration (16), error counts over the long window (5), days since each
component was last replaced (4), machine age (1), model one-hot (4).
"""

import argparse
import os
import sys

import pandas as pd

SENSORS = ["volt", "rotate", "pressure", "vibration"]
ERRORS = [f"error{i}" for i in range(1, 6)]
COMPONENTS = [f"comp{i}" for i in range(1, 5)]
MODELS = [f"model{i}" for i in range(1, 5)]


def rolling(tel, window, stride):
    out = []
    for stat in ("mean", "std"):
        frame = (
            tel.pivot_table(index="datetime", columns="machineID", values=SENSORS)
            .rolling(window, min_periods=window)
            .agg(stat)
        )
        frame = frame.iloc[window - 1 :: stride].stack(level="machineID", future_stack=True)
        frame.columns = [f"{c}_{stat}_{window}h" for c in frame.columns]
        out.append(frame)
    return pd.concat(out, axis=1)


def error_counts(errors, tel, window, stride):
    counts = pd.get_dummies(errors.set_index(["datetime", "machineID"])["errorID"])
    counts = counts.groupby(level=[0, 1]).sum().reindex(columns=ERRORS, fill_value=0)
    grid = tel[["datetime", "machineID"]].set_index(["datetime", "machineID"])
    counts = grid.join(counts).fillna(0)
    wide = counts.unstack("machineID").rolling(window, min_periods=window).sum()
    wide = wide.iloc[window - 1 :: stride].stack(level="machineID", future_stack=True)
    wide.columns = [f"{c}_count" for c in wide.columns]
    return wide


def days_since_replacement(maint, tel):
    rep = pd.get_dummies(maint.set_index(["datetime", "machineID"])["comp"])
    rep = rep.groupby(level=[0, 1]).max().reindex(columns=COMPONENTS, fill_value=False)
    grid = tel[["datetime", "machineID"]].set_index(["datetime", "machineID"])
    rep = grid.join(rep)
    rep[COMPONENTS] = rep[COMPONENTS].astype("boolean").fillna(False).astype(bool)
    rep = rep.reset_index().sort_values(["machineID", "datetime"])
    for comp in COMPONENTS:
        last = rep["datetime"].where(rep[comp].astype(bool))
        last = last.groupby(rep["machineID"]).ffill()
        rep[comp] = (rep["datetime"] - last).dt.total_seconds() / 86400.0
        # Before any recorded replacement: time since the series began.
        first = rep.groupby("machineID")["datetime"].transform("min")
        rep[comp] = rep[comp].fillna((rep["datetime"] - first).dt.total_seconds() / 86400.0)
    rep = rep.set_index(["datetime", "machineID"])[COMPONENTS]
    rep.columns = [f"{c}_days" for c in COMPONENTS]
    return rep


def labels(features, failures, horizon):
    out = pd.Series("none", index=features.index, name="failure")
    idx = features.index.to_frame(index=False)
    for _, f in failures.iterrows():
        mask = (
            (idx["machineID"] == f["machineID"])
            & (idx["datetime"] <= f["datetime"])
            & (idx["datetime"] > f["datetime"] - pd.Timedelta(hours=horizon))
        ).to_numpy()
        out[mask] = f["failure"]
    return out


def main(argv):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--raw-dir", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--short-window", type=int, default=3, help="hours")
    ap.add_argument("--long-window", type=int, default=24, help="hours")
    ap.add_argument("--stride", type=int, default=3, help="hours between rows")
    ap.add_argument("--horizon", type=int, default=24, help="label horizon, hours")
    args = ap.parse_args(argv)
    if args.long_window % args.stride or args.short_window > args.long_window:
        ap.error("long window must be a multiple of the stride and >= the short one")

    def read(name):
        frame = pd.read_csv(os.path.join(args.raw_dir, name))
        if "datetime" in frame:
            frame["datetime"] = pd.to_datetime(frame["datetime"])
        return frame

    tel = read("PdM_telemetry.csv").sort_values(["machineID", "datetime"])
    errors, maint = read("PdM_errors.csv"), read("PdM_maint.csv")
    failures, machines = read("PdM_failures.csv"), read("PdM_machines.csv")

    # Align both rolling grids on the long window's first complete row.
    short = rolling(tel, args.short_window, 1)
    long_ = rolling(tel, args.long_window, args.stride)
    feats = long_.join(short, how="left")
    feats = feats.join(error_counts(errors, tel, args.long_window, args.stride), how="left")
    feats = feats.join(days_since_replacement(maint, tel), how="left")
    meta = machines.set_index("machineID")
    ids = feats.index.get_level_values("machineID")
    feats["age"] = meta.loc[ids, "age"].to_numpy()
    for model in MODELS:
        feats[model] = (meta.loc[ids, "model"].to_numpy() == model).astype(float)
    feats = feats.dropna()
    if feats.shape[1] != 30:
        sys.exit(f"expected 30 features, built {feats.shape[1]}")
    feats["failure"] = labels(feats, failures, args.horizon)
    feats.reset_index()[["datetime", "machineID", *feats.columns]].to_csv(
        args.out, index=False
    )
    print(f"wrote {len(feats)} rows to {args.out}")


if __name__ == "__main__":
    main(sys.argv[1:])
