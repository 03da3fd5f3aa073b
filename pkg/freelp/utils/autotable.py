#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
HDF5 storage for report columns and logged values.

Each name becomes one node under the root of the file, holding one row per
appended value: numbers and arrays go into extendable arrays whose row shape
and dtype are fixed by the first value, strings into variable-length
unicode arrays. The files open with PyTables, h5py, libhdf5 or Matlab's
``hdf5read``.

Example::

    from freelp.utils.autotable import AutoTable

    with AutoTable('spectrum.h5') as tbl:
        for s in report.splits:
            tbl.append_row({'alpha': ",".join(map(str, s.split.alpha)),
                            'norm': s.norm, 'T': s.T})
"""

import numpy as np
import tables


class AutoTable:
    """ One HDF5 file with a growing table per name. """

    atoms = {
        'f': {4: tables.Float32Atom, 8: tables.Float64Atom},
        'c': {8: tables.ComplexAtom, 16: tables.ComplexAtom},
        'i': {1: tables.Int8Atom, 2: tables.Int16Atom, 4: tables.Int32Atom, 8: tables.Int64Atom},
        'u': {1: tables.UInt8Atom},
        'b': {1: tables.BoolAtom},
    }

    def __init__(self, fname, compression_level=1):
        """
        :param fname: HDF5 file to create; an existing file is truncated
        :type  fname: str
        :param compression_level: zlib level of all tables (default: 1)
        :type  compression_level: int
        """
        self.fname = fname
        self.h5 = tables.open_file(fname, "w")
        self.filters = tables.Filters(complevel=compression_level, complib='zlib', shuffle=True)
        self.tables = {}

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()

    @property
    def names(self):
        return sorted(self.tables)

    def close(self):
        if self.h5.isopen:
            self.h5.close()

    @staticmethod
    def normalize(value):
        """ Map *value* to what gets stored: str stays str, None becomes NaN,
        signed integers become int64.
        """
        if isinstance(value, str):
            return value
        if value is None:
            return np.asarray(np.nan)
        value = np.asarray(value)
        if value.dtype.kind == 'i':
            return value.astype(np.int64)
        return value

    def _atom(self, name, example):
        kind, size = example.dtype.kind, example.dtype.itemsize
        try:
            atom = self.atoms[kind][size]
        except KeyError:
            raise TypeError("Could not create table %s because of unknown dtype '%s'" %
                            (name, example.dtype))
        return atom(size) if kind == 'c' else atom()

    def append(self, name, value):
        """ Append *value* as the next row of table *name*.

        :param value: str, None, scalar or ndarray; later rows of a table
            must have the shape and a dtype compatible with the first one
        :raises TypeError: for objects and mismatching rows
        """
        value = self.normalize(value)

        if isinstance(value, str):
            if name not in self.tables:
                self.tables[name] = self.h5.create_vlarray(self.h5.root, name,
                                                           tables.VLUnicodeAtom(),
                                                           filters=self.filters)
            elif not isinstance(self.tables[name], tables.VLArray):
                raise TypeError('Table "%s" holds numbers, got a string' % name)
            self.tables[name].append(value)
            self.tables[name].flush()
            return

        if value.dtype.kind == 'O':
            raise TypeError("Don't know how to store values of type '%s'" % type(value))

        if name not in self.tables:
            self.tables[name] = self.h5.create_earray(self.h5.root, name,
                                                      self._atom(name, value),
                                                      (0, ) + value.shape,
                                                      filters=self.filters)
        elif isinstance(self.tables[name], tables.VLArray):
            raise TypeError('Table "%s" holds strings, got %s' % (name, value.dtype))
        try:
            self.tables[name].append(value[np.newaxis])
        except (ValueError, TypeError):
            raise TypeError('Wrong datatype "%s" or shape %s for "%s" field' %
                            (value.dtype, value.shape, name))
        self.tables[name].flush()

    def append_all(self, valdict):
        """ Append every value of *valdict* to the table of its key. """
        for name, value in valdict.items():
            self.append(name, value)

    def append_row(self, row):
        """ Append one report row, a dict column -> value. """
        self.append_all(row)
