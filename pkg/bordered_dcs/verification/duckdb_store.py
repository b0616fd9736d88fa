"""Verification history in a DuckDB file.

Every CLI run can append its report rows (edges, faces, boundaries, checks)
tagged with a run id, so residuals can be compared across runs and seeds.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional

import pandas as pd

from bordered_dcs.settings import log, trace


NUMERIC_TYPES = {
    "TINYINT",
    "SMALLINT",
    "INTEGER",
    "INT",
    "BIGINT",
    "HUGEINT",
    "DOUBLE",
    "FLOAT",
    "BOOLEAN",
}


def _cell(value: Any) -> Any:
    """Nested values (lists, dicts) are stored as JSON text."""
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, sort_keys=True)
    return value


@dataclass
class DuckDbStore:
    """Append heterogeneous report rows into DuckDB tables.

    Schemas stay flexible: missing columns are added as VARCHAR and numeric
    columns that later receive strings are widened to VARCHAR. pandas
    DataFrames are the ingestion batch format.
    """

    db_path: Path

    def connect(self):
        import duckdb  # lazy import

        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        return duckdb.connect(str(self.db_path))

    @staticmethod
    def _get_table_column_types(con, table: str) -> Dict[str, str]:
        try:
            rows = con.execute(f"PRAGMA table_info('{table}')").fetchall()
        except Exception:
            return {}
        # (cid, name, type, notnull, dflt_value, pk)
        return {str(r[1]): str(r[2] or "").upper() for r in rows if len(r) >= 3}

    @staticmethod
    def _widen_to_varchar(con, table: str, df: pd.DataFrame) -> None:
        types = DuckDbStore._get_table_column_types(con, table)
        for col in df.columns:
            existing = types.get(str(col))
            if existing not in NUMERIC_TYPES:
                continue
            if not any(isinstance(v, str) for v in df[col].dropna().head(50).tolist()):
                continue
            safe = str(col).replace('"', '""')
            con.execute(f'ALTER TABLE "{table}" ALTER COLUMN "{safe}" TYPE VARCHAR')

    @staticmethod
    def _ensure_columns(con, table: str, columns: Iterable[str]) -> None:
        existing = set(DuckDbStore._get_table_column_types(con, table))
        for col in columns:
            if col in existing:
                continue
            safe = str(col).replace('"', '""')
            con.execute(f'ALTER TABLE "{table}" ADD COLUMN "{safe}" VARCHAR')
            existing.add(col)

    @staticmethod
    def append_rows(con, table: str, rows: Iterable[Mapping[str, Any]], *, batch_size: int = 10_000) -> int:
        total = 0
        batch: List[Dict[str, Any]] = []
        for row in rows:
            if row is None:
                continue
            batch.append({k: _cell(v) for k, v in row.items()})
            if len(batch) >= batch_size:
                total += DuckDbStore._append_batch(con, table, batch)
                batch = []
        if batch:
            total += DuckDbStore._append_batch(con, table, batch)
        return total

    @staticmethod
    def _append_batch(con, table: str, batch: List[Dict[str, Any]]) -> int:
        df = pd.DataFrame(batch)
        if df.empty:
            return 0

        view = f"__tmp_{table}"
        con.register(view, df)
        try:
            types = DuckDbStore._get_table_column_types(con, table)
            if not types:
                con.execute(f'CREATE TABLE "{table}" AS SELECT * FROM {view}')
                return int(len(df))

            DuckDbStore._ensure_columns(con, table, df.columns)
            DuckDbStore._widen_to_varchar(con, table, df)

            table_cols = list(DuckDbStore._get_table_column_types(con, table))
            for col in table_cols:
                if col not in df.columns:
                    df[col] = None

            con.unregister(view)
            con.register(view, df[table_cols])
            cols_sql = ",".join('"' + c.replace('"', '""') + '"' for c in table_cols)
            con.execute(f'INSERT INTO "{table}" ({cols_sql}) SELECT {cols_sql} FROM {view}')
            return int(len(df))
        finally:
            try:
                con.unregister(view)
            except Exception:
                pass


def record_run(
    db_path: Path,
    *,
    subcommand: str,
    input_path: Optional[str],
    tables: Mapping[str, Iterable[Mapping[str, Any]]],
    run_id: Optional[str] = None,
) -> str:
    """Append one run's tables to the store; returns the run id."""
    run_id = run_id or uuid.uuid4().hex
    stamp = datetime.now(timezone.utc).isoformat()
    store = DuckDbStore(Path(db_path))
    con = store.connect()
    try:
        DuckDbStore.append_rows(
            con,
            "runs",
            [{"run_id": run_id, "subcommand": subcommand, "input": input_path or "", "recorded_at": stamp}],
        )
        for table, rows in tables.items():
            tagged = ({"run_id": run_id, **dict(row)} for row in rows)
            n = DuckDbStore.append_rows(con, table, tagged)
            trace("duckdb", f"{table}: +{n} rows")
    finally:
        con.close()
    log("duckdb", f"run {run_id} recorded in {db_path}")
    return run_id
