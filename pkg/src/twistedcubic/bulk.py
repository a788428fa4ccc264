"""Vectorized line engine over packed integer keys.

Every line is identified by its normalized Pluecker vector packed base-q into
an int64 key, so whole-universe classification, orbit sweeps with the full
group, and stabilizer filters all run as numpy table-lookup pipelines on the
field's dense arithmetic tables.  Requires q <= gfq.DENSE_TABLE_LIMIT.
"""

from __future__ import annotations

import numpy as np

from . import pg3, twisted

PAIR_IDX = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

CLASS_ORDER = twisted.LINE_CLASSES
CODE = {cls: i for i, cls in enumerate(CLASS_ORDER)}


def isin_sorted(values, table):
    """Membership of values in an ascending int64 array."""
    if len(table) == 0:
        return np.zeros(len(values), dtype=bool)
    pos = np.searchsorted(table, values)
    pos[pos == len(table)] = 0
    return table[pos] == values


class Engine:
    """Bulk classification and orbit machinery for one (field, cubic) pair."""

    def __init__(self, field, model=None, chunk=1 << 21):
        if field.mul_table is None:
            raise ValueError(f"bulk engine needs dense tables (q <= 64), got q={field.q}")
        self.field = field
        self.model = model if model is not None else twisted.build_cubic(field)
        self.chunk = chunk
        q = field.q
        self.q = q
        self.ADD = field.add_table
        self.SUB = field.sub_table
        self.MUL = field.mul_table
        self.NEG = field.neg_table
        self.INV = field.inv_table
        self.SQ = field.square_mask
        self.TR = field.trace_table
        self.three = field.of_int(3)
        self.nine = field.mul(self.three, self.three)
        self.four = field.of_int(4)
        self.group_order = q**3 - q

        self._build_model_keys()
        self._class_keys = None
        self._klein_violations = None
        self._group = None

    # -- packing -------------------------------------------------------------

    def pack(self, cols):
        out = cols[0].astype(np.int64)
        for c in cols[1:]:
            out = out * self.q + c
        return out

    def unpack6(self, key):
        out = []
        for _ in range(6):
            out.append(int(key % self.q))
            key //= self.q
        return tuple(reversed(out))

    def pack_tuple(self, tup):
        out = 0
        for c in tup:
            out = out * self.q + int(c)
        return out

    # -- elementwise geometry -------------------------------------------------

    def _plucker(self, U, V):
        MUL, SUB = self.MUL, self.SUB
        cols = [SUB[MUL[U[:, i], V[:, j]], MUL[U[:, j], V[:, i]]] for i, j in PAIR_IDX]
        return np.stack(cols, axis=1)

    def _normalize_rows(self, P):
        first = (P != 0).argmax(axis=1)
        piv = P[np.arange(len(P)), first]
        return self.MUL[self.INV[piv][:, None], P]

    def _root_count(self, a1, a2):
        """Number of roots of x^2 - a1*x + a2 (valid elementwise)."""
        MUL, SUB, INV = self.MUL, self.SUB, self.INV
        if self.field.p == 2:
            ia = INV[a1]
            c = MUL[a2, MUL[ia, ia]]
            return np.where(a1 == 0, 1, np.where(self.TR[c] == 0, 2, 0))
        d = SUB[MUL[a1, a1], MUL[self.four, a2]]
        return np.where(d == 0, 1, np.where(self.SQ[d], 2, 0))

    def _chord_code(self, P):
        """0 = not a chord, 1 = tangent, 2 = real chord, 3 = imaginary chord.

        Scale invariant, so P need not be normalized.  Chords through the
        t=infinity cubic point have the last three coordinates zero; all other
        chords match the symmetric-function pattern with nonzero l23.
        """
        MUL, SUB, INV = self.MUL, self.SUB, self.INV
        p0, p1, p2, p3, p4, p5 = (P[:, i] for i in range(6))
        code = np.zeros(len(P), dtype=np.int8)

        thru_inf = (p3 == 0) & (p4 == 0) & (p5 == 0)
        code[thru_inf & (p1 == 0) & (p2 == 0)] = 1
        code[thru_inf & (p2 != 0) & (MUL[p0, p2] == MUL[p1, p1])] = 2

        s = INV[p5]
        a1 = MUL[p4, s]
        a2 = MUL[p3, s]
        match = (
            (p5 != 0)
            & (MUL[a2, a2] == MUL[p0, s])
            & (MUL[a1, a2] == MUL[p1, s])
            & (SUB[MUL[a1, a1], a2] == MUL[p2, s])
        )
        cnt = self._root_count(a1, a2)
        code[match & (cnt == 2)] = 2
        code[match & (cnt == 1)] = 1
        code[match & (cnt == 0)] = 3
        return code

    def _polar(self, P):
        # image of the null polarity on Pluecker vectors: a fixed monomial map
        # (checked against the two-plane definition in the test suite)
        MUL = self.MUL
        t, n = self.three, self.nine
        return np.stack([
            MUL[t, P[:, 0]], MUL[t, P[:, 1]], MUL[n, P[:, 3]],
            P[:, 2], MUL[t, P[:, 4]], MUL[t, P[:, 5]],
        ], axis=1)

    def _klein(self, P):
        MUL, SUB = self.MUL, self.SUB
        return self.ADD[SUB[MUL[P[:, 0], P[:, 5]], MUL[P[:, 1], P[:, 4]]],
                        MUL[P[:, 2], P[:, 3]]]

    def _pairing_with(self, P, r):
        """Polarized Klein form of every row against the fixed vector r."""
        MUL, ADD, NEG = self.MUL, self.ADD, self.NEG
        acc = MUL[int(r[5]), P[:, 0]]
        acc = ADD[acc, NEG[MUL[int(r[4]), P[:, 1]]]]
        acc = ADD[acc, MUL[int(r[3]), P[:, 2]]]
        acc = ADD[acc, MUL[int(r[2]), P[:, 3]]]
        acc = ADD[acc, NEG[MUL[int(r[1]), P[:, 4]]]]
        acc = ADD[acc, MUL[int(r[0]), P[:, 5]]]
        return acc

    # -- enumerations -----------------------------------------------------------

    def _pg2_points(self):
        q = self.q
        rows = [np.array([[0, 0, 1]], dtype=np.int16)]
        a = np.arange(q, dtype=np.int16)
        rows.append(np.stack([np.zeros(q, np.int16), np.ones(q, np.int16), a], axis=1))
        aa, bb = np.meshgrid(a, a, indexing="ij")
        rows.append(np.stack([np.ones(q * q, np.int16), aa.ravel(), bb.ravel()], axis=1))
        return np.concatenate(rows, axis=0)

    def _pg2_line_pairs(self):
        q = self.q
        a = np.arange(q, dtype=np.int16)
        z = np.zeros(q, np.int16)
        o = np.ones(q, np.int16)
        aa, bb = np.meshgrid(a, a, indexing="ij")
        n2 = q * q
        r0 = [np.stack([np.ones(n2, np.int16), np.zeros(n2, np.int16), aa.ravel()], 1),
              np.stack([o, a, z], 1),
              np.array([[0, 1, 0]], np.int16)]
        r1 = [np.stack([np.zeros(n2, np.int16), np.ones(n2, np.int16), bb.ravel()], 1),
              np.tile(np.array([[0, 0, 1]], np.int16), (q, 1)),
              np.array([[0, 0, 1]], np.int16)]
        return np.concatenate(r0, 0), np.concatenate(r1, 0)

    def _pg3_points(self):
        q = self.q
        a = np.arange(q, dtype=np.int16)
        blocks = [np.array([[0, 0, 0, 1]], np.int16)]
        blocks.append(np.stack([np.zeros(q, np.int16), np.zeros(q, np.int16),
                                np.ones(q, np.int16), a], 1))
        aa, bb = np.meshgrid(a, a, indexing="ij")
        n2 = q * q
        blocks.append(np.stack([np.zeros(n2, np.int16), np.ones(n2, np.int16),
                                aa.ravel(), bb.ravel()], 1))
        aa, bb, cc = np.meshgrid(a, a, a, indexing="ij")
        n3 = q**3
        blocks.append(np.stack([np.ones(n3, np.int16), aa.ravel(), bb.ravel(),
                                cc.ravel()], 1))
        return np.concatenate(blocks, 0)

    def _combine(self, coeffs, basis):
        """Row-wise sum of coeff[i] * basis[i] over the field, basis fixed."""
        ADD, MUL = self.ADD, self.MUL
        out = None
        for i in range(coeffs.shape[1]):
            term_cols = [MUL[coeffs[:, i], int(basis[i][j])] for j in range(4)]
            term = np.stack(term_cols, axis=1)
            out = term if out is None else ADD[out, term]
        return out

    def _line_pair_chunks(self):
        """Spanning row pairs of every rank-2 RREF 2x4 matrix, chunked."""
        q = self.q
        for c0 in range(3):
            for c1 in range(c0 + 1, 4):
                slots = [(0, j) for j in range(c0 + 1, 4) if j != c1]
                slots += [(1, j) for j in range(c1 + 1, 4)]
                total = q ** len(slots)
                for start in range(0, total, self.chunk):
                    idx = np.arange(start, min(start + self.chunk, total), dtype=np.int64)
                    U = np.zeros((len(idx), 4), np.int16)
                    V = np.zeros((len(idx), 4), np.int16)
                    U[:, c0] = 1
                    V[:, c1] = 1
                    rem = idx
                    for row, j in reversed(slots):
                        (U if row == 0 else V)[:, j] = (rem % q).astype(np.int16)
                        rem = rem // q
                    yield U, V

    # -- model key sets ---------------------------------------------------------

    def _build_model_keys(self):
        field, model = self.field, self.model
        pg2 = self._pg2_points()

        # lines meeting the cubic: all lines through each cubic point
        parts = []
        for pt in sorted(model.cubic_point_set):
            j = next(i for i in range(4) if pt[i])
            avoid = [i for i in range(4) if i != j]
            V = np.zeros((len(pg2), 4), np.int16)
            V[:, avoid] = pg2
            U = np.tile(np.asarray(pt, np.int16), (len(pg2), 1))
            parts.append(self.pack(list(self._normalize_rows(self._plucker(U, V)).T)))
        self.meets_cubic_keys = np.unique(np.concatenate(parts))

        # lines inside some osculating plane
        r0, r1 = self._pg2_line_pairs()
        parts = []
        for plane in sorted(model.gamma_plane_set):
            basis = pg3.plane_basis(field, plane)
            U = self._combine(r0, basis)
            V = self._combine(r1, basis)
            parts.append(self.pack(list(self._normalize_rows(self._plucker(U, V)).T)))
        self.gamma_line_keys = np.unique(np.concatenate(parts))

        self.gamma_plane_keys = np.unique(np.array(
            [self.pack_tuple(pl) for pl in model.gamma_plane_set], dtype=np.int64))

        if field.xi == 0:
            self.axis_plucker = model.axis.plucker
            self.axis_key = self.pack_tuple(model.axis.plucker)
        else:
            self.axis_plucker = None
            self.axis_key = None

    # -- classification ----------------------------------------------------------

    def _classify_chunk(self, U, V):
        P = self._normalize_rows(self._plucker(U, V))
        keys = self.pack(list(P.T))
        klein_bad = int(np.count_nonzero(self._klein(P)))

        cc = self._chord_code(P)
        cls = np.full(len(P), CODE[twisted.ENG], np.int8)
        cls[cc == 2] = CODE[twisted.RC]
        cls[cc == 1] = CODE[twisted.T]
        cls[cc == 3] = CODE[twisted.IC]

        rest = cc == 0
        meets = isin_sorted(keys, self.meets_cubic_keys)
        in_gamma = isin_sorted(keys, self.gamma_line_keys)
        m1 = rest & meets
        cls[m1 & in_gamma] = CODE[twisted.UG]
        cls[m1 & ~in_gamma] = CODE[twisted.UNG]

        m0 = rest & ~meets
        if self.field.xi != 0:
            pc = self._chord_code(self._polar(P))
            if (m0 & (pc == 1)).any():
                raise RuntimeError("polar image of an external line is a tangent")
            cls[m0 & (pc == 2)] = CODE[twisted.RA]
            cls[m0 & (pc == 3)] = CODE[twisted.IA]
            ext = m0 & (pc == 0)
            cls[ext & in_gamma] = CODE[twisted.EG]
        else:
            is_axis = m0 & (keys == self.axis_key)
            cls[is_axis] = CODE[twisted.A]
            hits_axis = m0 & ~is_axis & (self._pairing_with(P, self.axis_plucker) == 0)
            cls[hits_axis] = CODE[twisted.EA]
        return keys, cls, klein_bad

    def class_keys(self) -> dict[str, np.ndarray]:
        """Sorted key array per populated class, classifying the whole universe."""
        if self._class_keys is None:
            buckets = {cls: [] for cls in twisted.valid_line_classes(self.field)}
            klein_bad = 0
            total = 0
            for U, V in self._line_pair_chunks():
                keys, cls, bad = self._classify_chunk(U, V)
                klein_bad += bad
                total += len(keys)
                for name in buckets:
                    sel = cls == CODE[name]
                    if sel.any():
                        buckets[name].append(keys[sel])
            expect = pg3.line_count(self.q)
            if total != expect:
                raise RuntimeError(f"enumerated {total} lines, expected {expect}")
            self._class_keys = {
                name: (np.sort(np.concatenate(parts)) if parts
                       else np.empty(0, np.int64))
                for name, parts in buckets.items()
            }
            self._klein_violations = klein_bad
        return self._class_keys

    def klein_violations(self) -> int:
        self.class_keys()
        return self._klein_violations

    def class_counts(self) -> dict[str, int]:
        return {name: len(keys) for name, keys in self.class_keys().items()}

    def polar_keys(self, keys) -> np.ndarray:
        """Sorted keys of the polar images of the given lines (xi != 0)."""
        if self.field.xi == 0:
            raise ValueError("the null polarity degenerates when q = 0 mod 3")
        q = self.q
        cols = []
        rem = keys.copy()
        for _ in range(6):
            cols.append((rem % q).astype(np.int16))
            rem = rem // q
        P = np.stack(list(reversed(cols)), axis=1)
        return np.sort(self.pack(list(self._normalize_rows(self._polar(P)).T)))

    # -- group sweeps ------------------------------------------------------------

    def _group_arrays(self):
        if self._group is None:
            q = self.q
            MUL, SUB = self.MUL, self.SUB
            cs, ds = np.meshgrid(np.arange(q, dtype=np.int16),
                                 np.arange(q, dtype=np.int16), indexing="ij")
            c0 = cs.ravel()
            d0 = ds.ravel()
            keep = c0 != 0
            blk0 = np.stack([np.zeros(keep.sum(), np.int16),
                             np.ones(keep.sum(), np.int16), c0[keep], d0[keep]], 1)
            b1, c1, d1 = [x.ravel() for x in np.meshgrid(
                np.arange(q, dtype=np.int16), np.arange(q, dtype=np.int16),
                np.arange(q, dtype=np.int16), indexing="ij")]
            keep1 = SUB[d1, MUL[b1, c1]] != 0
            blk1 = np.stack([np.ones(keep1.sum(), np.int16), b1[keep1],
                             c1[keep1], d1[keep1]], 1)
            abcd = np.concatenate([blk0, blk1], 0)
            if len(abcd) != self.group_order:
                raise RuntimeError("group enumeration size mismatch")

            a, b, c, d = (abcd[:, i] for i in range(4))
            two, three = self.field.of_int(2), self.three
            ADD = self.ADD

            def m(x, y):
                return MUL[x, y]

            a2, b2, c2, d2 = m(a, a), m(b, b), m(c, c), m(d, d)
            rows = [
                [m(a2, a), m(a2, c), m(a, c2), m(c2, c)],
                [m(three, m(a2, b)), ADD[m(a2, d), m(two, m(a, m(b, c)))],
                 ADD[m(b, c2), m(two, m(a, m(c, d)))], m(three, m(c2, d))],
                [m(three, m(a, b2)), ADD[m(b2, c), m(two, m(a, m(b, d)))],
                 ADD[m(a, d2), m(two, m(b, m(c, d)))], m(three, m(c, d2))],
                [m(b2, b), m(b2, d), m(b, d2), m(d2, d)],
            ]
            mats = np.stack([np.stack(r, axis=1) for r in rows], axis=1)
            self._group = (abcd, mats)
        return self._group

    def group_abcd(self):
        return self._group_arrays()[0]

    def _act_all(self, pt):
        """Image of one point under every group element, as an (N,4) array."""
        _, mats = self._group_arrays()
        ADD, MUL = self.ADD, self.MUL
        cols = []
        for j in range(4):
            acc = None
            for i in range(4):
                if pt[i] == 0:
                    continue
                term = MUL[int(pt[i]), mats[:, i, j]]
                acc = term if acc is None else ADD[acc, term]
            cols.append(acc)
        return np.stack(cols, axis=1)

    def orbit_sweep(self, line) -> np.ndarray:
        """Sorted unique keys of the full-group orbit of the line."""
        u, v = line.pair
        P = self._normalize_rows(self._plucker(self._act_all(u), self._act_all(v)))
        return np.unique(self.pack(list(P.T)))

    def line_from_key(self, key) -> pg3.ProjLine:
        return pg3.line_from_plucker(self.field, self.unpack6(int(key)))

    def orbit_partition_keys(self, keys_sorted) -> list[tuple[int, int, int]]:
        """Partition an action-closed sorted key array into orbits.

        Returns (size, stabilizer_order, representative_key) sorted by
        (size, representative); representative is the orbit's minimal key.
        """
        n = len(keys_sorted)
        visited = np.zeros(n, dtype=bool)
        records = []
        pos = 0
        while pos < n:
            off = int(np.argmax(~visited[pos:]))
            if visited[pos + off]:
                break
            pos += off
            seed = self.line_from_key(keys_sorted[pos])
            orbit = self.orbit_sweep(seed)
            where = np.searchsorted(keys_sorted, orbit)
            if (where >= n).any() or (keys_sorted[where] != orbit).any():
                raise ValueError("key set is not closed under the group action")
            visited[where] = True
            size = len(orbit)
            if self.group_order % size:
                raise RuntimeError(f"orbit size {size} does not divide {self.group_order}")
            records.append((size, self.group_order // size, int(orbit[0])))
        if not visited.all():
            raise RuntimeError("orbit partition missed input lines")
        records.sort(key=lambda r: (r[0], r[2]))
        return records

    def stabilizer_abcd(self, line) -> list[tuple[int, int, int, int]]:
        """Exhaustive stabilizer filter; returns sorted (a,b,c,d) tuples."""
        abcd, _ = self._group_arrays()
        lp = line.plucker
        mask = np.ones(len(abcd), dtype=bool)
        for pt in line.pair:
            X = self._act_all(pt)
            mask &= self._on_line_mask(X, lp)
        return sorted(map(tuple, abcd[mask].tolist()))

    def _on_line_mask(self, X, lp):
        MUL, SUB, ADD = self.MUL, self.SUB, self.ADD
        l01, l02, l03, l12, l13, l23 = (int(c) for c in lp)
        x0, x1, x2, x3 = (X[:, i] for i in range(4))
        e0 = ADD[SUB[MUL[x0, l12], MUL[x1, l02]], MUL[x2, l01]]
        e1 = ADD[SUB[MUL[x0, l13], MUL[x1, l03]], MUL[x3, l01]]
        e2 = ADD[SUB[MUL[x0, l23], MUL[x2, l03]], MUL[x3, l02]]
        e3 = ADD[SUB[MUL[x1, l23], MUL[x2, l13]], MUL[x3, l12]]
        return (e0 == 0) & (e1 == 0) & (e2 == 0) & (e3 == 0)

    # -- plane census ------------------------------------------------------------

    def plane_class_counts(self) -> dict[str, int]:
        """Counts of osculating / d-point plane types over all planes."""
        planes = self._pg3_points()
        ADD, MUL = self.ADD, self.MUL
        m = np.zeros(len(planes), dtype=np.int16)
        for pt in sorted(self.model.cubic_point_set):
            acc = None
            for i in range(4):
                if pt[i] == 0:
                    continue
                term = MUL[int(pt[i]), planes[:, i]]
                acc = term if acc is None else ADD[acc, term]
            m += (acc == 0)
        if int(m.max()) > 3:
            raise RuntimeError("a plane contains four cubic points")
        keys = self.pack([planes[:, 0], planes[:, 1], planes[:, 2], planes[:, 3]])
        gamma = isin_sorted(keys, self.gamma_plane_keys)
        return {
            "gamma": int(gamma.sum()),
            "2C": int(((m == 2) & ~gamma).sum()),
            "3C": int(((m == 3) & ~gamma).sum()),
            "1C": int(((m == 1) & ~gamma).sum()),
            "0C": int(((m == 0) & ~gamma).sum()),
        }
