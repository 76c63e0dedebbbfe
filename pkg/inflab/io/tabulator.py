# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: io: row tabulation and atomic file output."""

import json as _json
import os as _os
import pathlib as _pathlib
import tempfile as _tempfile
import typing as _typing

import numpy as _np
import pandas as _pd
from masci_tools.io.parsers import tabulator as _masci_tabulator

import inflab as _inflab

FLOAT_FORMAT = "%.17g"


class Tabulator(_masci_tabulator.Tabulator):
    """Collects flat per-row records (one mapping per generation, pair or sample) into a table.

    Class extends :py:class:`masci_tools.io.parsers.tabulator.Tabulator`. The recipe's include list holds the
    columns in order, set from ``columns`` or by :py:meth:`~.autolist` from the first row. The internal storage
    format is a dict of lists while building. :py:attr:`~.table` returns a pandas DataFrame.
    """

    def __init__(self,
                 columns: _typing.Sequence[str] = None,
                 recipe: _masci_tabulator.Recipe = None,
                 verbose: bool = False,
                 **kwargs):
        """Init tabulator.

        :param columns: fixed column order. None: taken from the recipe, else from the first row.
        :param recipe: recipe whose include list gives the columns.
        :param verbose: True: log every appended row at debug level.
        :param kwargs: Additional keyword arguments for the base class.
        """
        super().__init__(recipe=recipe, **kwargs)
        if columns:
            self.recipe.include_list = {column: None for column in columns}
        self._table = {c: [] for c in self.columns}
        self._rows = 0
        self.verbose = verbose

    @property
    def columns(self) -> _typing.List[str]:
        return list(self.recipe.include_list or {})

    @property
    def table(self) -> _pd.DataFrame:
        """The rows tabulated so far as a DataFrame."""
        columns = self.columns
        return _pd.DataFrame.from_dict(self._table)[columns] if columns else _pd.DataFrame()

    def __len__(self) -> int:
        return self._rows

    def autolist(self,
                 obj: _typing.Mapping[str, _typing.Any],
                 overwrite: bool = False,
                 pretty_print: bool = False,
                 **kwargs):
        """Take the columns from the keys of an example row.

        :param obj: example row.
        :param overwrite: True: replace the recipe include list. False: only if it is empty. Replacing drops all rows.
        :param pretty_print: True: print the generated list.
        """
        if not isinstance(obj, _typing.Mapping):
            return
        include_list = {key: None for key in obj}
        if pretty_print:
            print(_json.dumps(include_list, indent=4))
        if overwrite or not self.columns:
            self.recipe.include_list = include_list
            self.clear()

    def clear(self):
        """Drop all rows, keep the columns."""
        self._table = {c: [] for c in self.columns}
        self._rows = 0

    def tabulate(self,
                 collection: _typing.Iterable[_typing.Mapping[str, _typing.Any]],
                 table_type: _typing.Union[_typing.Type[dict], _typing.Type[_pd.DataFrame]] = _pd.DataFrame,
                 append: bool = True,
                 **kwargs) -> _typing.Union[dict, _pd.DataFrame]:
        """Tabulate a collection of rows.

        :param collection: rows, mappings from column to value.
        :param table_type: table as pandas DataFrame or dict.
        :param append: True: append to the table. False: overwrite it.
        :return: the whole table.
        """
        if table_type not in (dict, _pd.DataFrame):
            raise _inflab.logging.log(e=TypeError, o=self, f=self.tabulate,
                                      m=f"Unsupported table type {table_type}, use dict or DataFrame.")
        if not append:
            self.clear()
        self.extend(collection)
        return self.table if table_type is _pd.DataFrame else {c: list(v) for c, v in self._table.items()}

    def append(self, row: _typing.Mapping[str, _typing.Any]) -> None:
        """Append one row. Keys must be known columns once the first row fixed them; missing keys become NaN."""
        self.autolist(row)
        unknown = [k for k in row if k not in self._table]
        if unknown:
            raise _inflab.logging.log(e=KeyError, o=self, f=self.append,
                                      m=f"Unknown columns {unknown}, known {self.columns}.")
        for column in self._table:
            self._table[column].append(row.get(column, _np.nan))
        self._rows += 1
        if self.verbose:
            _inflab.logging.log(l=_inflab.logging.LogLevel.DEBUG, o=self, f=self.append, m=str(dict(row)))

    def extend(self, rows: _typing.Iterable[_typing.Mapping[str, _typing.Any]]) -> None:
        for row in rows:
            self.append(row)

    def to_csv(self, path: _typing.Union[str, _pathlib.Path]) -> _pathlib.Path:
        return write_csv(self.table, path)


def _atomic_write(path: _typing.Union[str, _pathlib.Path], writer: _typing.Callable[[_typing.TextIO], None]) \
        -> _pathlib.Path:
    path = _pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = _tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with _os.fdopen(fd, "w", newline="") as handle:
            writer(handle)
        _os.replace(tmp, path)
    except BaseException:
        if _os.path.exists(tmp):
            _os.remove(tmp)
        raise
    return path


def write_csv(table: _pd.DataFrame, path: _typing.Union[str, _pathlib.Path]) -> _pathlib.Path:
    """Write a table as CSV with a header row and 17 significant digits, atomically (temp file + rename)."""
    return _atomic_write(path, lambda handle: table.to_csv(handle, index=False, float_format=FLOAT_FORMAT))


def write_text(text: str, path: _typing.Union[str, _pathlib.Path]) -> _pathlib.Path:
    return _atomic_write(path, lambda handle: handle.write(text))


def write_json(obj: _typing.Any, path: _typing.Union[str, _pathlib.Path]) -> _pathlib.Path:
    def _default(o):
        if isinstance(o, _np.generic):
            return o.item()
        if isinstance(o, _np.ndarray):
            return o.tolist()
        raise TypeError(f"Not JSON serializable: {type(o)}")

    return write_text(_json.dumps(obj, indent=2, sort_keys=True, default=_default) + "\n", path)
