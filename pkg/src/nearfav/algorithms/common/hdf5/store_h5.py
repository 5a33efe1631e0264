# -*- coding: utf-8 -*-
"""
@license: "MIT"
@version: "1.0"
@created: "12 July 2019"
@modified: "24 March 2026"

Changes
-------
1. Store lattice fields (local times, hitting times, GFF samples) instead of
   attribute binaries
2. Metadata kept as HDF5 attributes of each group

"""

import os
import numpy as np
import h5py


class FieldStore_h5:

    def __init__(self, h5_file):
        self.h5_file = str(h5_file)
        if not os.path.exists(self.h5_file):
            h5f = h5py.File(self.h5_file, 'w')
            h5f.require_group('fields')
            h5f.close()

    def add_h5_dataset(self, group, data, attrs=None):
        h5f = h5py.File(self.h5_file, 'r+')
        if group in h5f:
            del h5f[group]
        dset = h5f.create_dataset(group, data=data, compression="gzip", compression_opts=9)
        if attrs:
            for key, value in attrs.items():
                dset.attrs[key] = value
        h5f.close()

    def read_h5_dataset(self, group):
        temp = np.array([])
        attrs = {}
        h5f = h5py.File(self.h5_file, 'r')
        if group in h5f:
            temp = h5f[group][:]
            attrs = {key: h5f[group].attrs[key] for key in h5f[group].attrs}
        h5f.close()
        return temp, attrs

    def list_groups(self, prefix='fields'):
        names = []
        h5f = h5py.File(self.h5_file, 'r')
        if prefix in h5f:
            h5f[prefix].visit(names.append)
        h5f.close()
        return names
