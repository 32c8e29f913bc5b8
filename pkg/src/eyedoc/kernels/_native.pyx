# cython: language_level=3
"""Native kernels: compiled twin of eyedoc.kernels.pure.

Semantics must stay bit-identical to the pure backend (same median
formula, same arrival-order centroid sums, same dispersion metric);
the cross-backend equivalence test enforces it.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memmove

BACKEND = "native"

FIX_NONE = 0
FIX_START = 1
FIX_BREAK = 2


cdef void _insertion_sort(double* buf, int n) noexcept nogil:
    cdef int i, j
    cdef double key
    for i in range(1, n):
        key = buf[i]
        j = i - 1
        while j >= 0 and buf[j] > key:
            buf[j + 1] = buf[j]
            j -= 1
        buf[j + 1] = key


cdef double _sorted_median(double* buf, int n) noexcept nogil:
    cdef int mid = n // 2
    if n % 2:
        return buf[mid]
    return (buf[mid - 1] + buf[mid]) / 2.0


cdef class MedianRing:
    """Per-axis moving median over the most recent valid points."""

    cdef int window
    cdef int count
    cdef double* xs
    cdef double* ys
    cdef double* scratch

    def __cinit__(self, int window):
        if window < 1 or window % 2 == 0:
            raise ValueError("window must be odd and >= 1")
        self.window = window
        self.count = 0
        self.xs = <double*> malloc(window * sizeof(double))
        self.ys = <double*> malloc(window * sizeof(double))
        self.scratch = <double*> malloc(window * sizeof(double))
        if self.xs == NULL or self.ys == NULL or self.scratch == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.xs)
        free(self.ys)
        free(self.scratch)

    def clear(self):
        self.count = 0

    def push(self, double x, double y):
        cdef int n
        if self.count == self.window:
            memmove(self.xs, self.xs + 1, (self.window - 1) * sizeof(double))
            memmove(self.ys, self.ys + 1, (self.window - 1) * sizeof(double))
            self.xs[self.window - 1] = x
            self.ys[self.window - 1] = y
        else:
            self.xs[self.count] = x
            self.ys[self.count] = y
            self.count += 1
        n = self.count
        memmove(self.scratch, self.xs, n * sizeof(double))
        _insertion_sort(self.scratch, n)
        cdef double mx = _sorted_median(self.scratch, n)
        memmove(self.scratch, self.ys, n * sizeof(double))
        _insertion_sort(self.scratch, n)
        cdef double my = _sorted_median(self.scratch, n)
        return (mx, my)


cdef class FixWindow:
    """Streaming dispersion-threshold fixation tracker (see pure.FixWindow)."""

    cdef public double dispersion_px
    cdef public long long min_fixation_ms

    cdef long long* cts
    cdef double* cxs
    cdef double* cys
    cdef int cstart
    cdef int clen
    cdef int ccap

    cdef bint _active
    cdef long long _n
    cdef double _sum_x, _sum_y
    cdef double _min_x, _max_x, _min_y, _max_y
    cdef long long _start_ms, _last_ms

    cdef public long long fix_start_ms
    cdef public double fix_cx
    cdef public double fix_cy
    cdef public long long end_ms
    cdef public double end_cx
    cdef public double end_cy
    cdef public long long end_duration_ms

    def __cinit__(self, double dispersion_px, long long min_fixation_ms):
        self.dispersion_px = dispersion_px
        self.min_fixation_ms = min_fixation_ms
        self.ccap = 64
        self.cts = <long long*> malloc(self.ccap * sizeof(long long))
        self.cxs = <double*> malloc(self.ccap * sizeof(double))
        self.cys = <double*> malloc(self.ccap * sizeof(double))
        if self.cts == NULL or self.cxs == NULL or self.cys == NULL:
            raise MemoryError()
        self.cstart = 0
        self.clen = 0
        self._active = False
        self._n = 0

    def __dealloc__(self):
        free(self.cts)
        free(self.cxs)
        free(self.cys)

    def reset(self):
        self.cstart = 0
        self.clen = 0
        self._active = False
        self._n = 0

    @property
    def active(self):
        return self._active

    cdef double _candidate_dispersion(self) noexcept nogil:
        cdef int i
        cdef double lo_x = self.cxs[self.cstart]
        cdef double hi_x = lo_x
        cdef double lo_y = self.cys[self.cstart]
        cdef double hi_y = lo_y
        cdef double v
        for i in range(self.cstart + 1, self.cstart + self.clen):
            v = self.cxs[i]
            if v < lo_x:
                lo_x = v
            if v > hi_x:
                hi_x = v
            v = self.cys[i]
            if v < lo_y:
                lo_y = v
            if v > hi_y:
                hi_y = v
        if hi_x - lo_x >= hi_y - lo_y:
            return hi_x - lo_x
        return hi_y - lo_y

    cdef void _finalize_end(self) noexcept nogil:
        self.end_ms = self._last_ms
        self.end_cx = self._sum_x / <double> self._n
        self.end_cy = self._sum_y / <double> self._n
        self.end_duration_ms = self._last_ms - self._start_ms

    cdef void _append(self, long long t_ms, double x, double y):
        cdef int end = self.cstart + self.clen
        if end == self.ccap:
            if self.cstart > 0:
                memmove(self.cts, self.cts + self.cstart, self.clen * sizeof(long long))
                memmove(self.cxs, self.cxs + self.cstart, self.clen * sizeof(double))
                memmove(self.cys, self.cys + self.cstart, self.clen * sizeof(double))
                self.cstart = 0
                end = self.clen
            else:
                self.ccap *= 2
                self.cts = <long long*> realloc(self.cts, self.ccap * sizeof(long long))
                self.cxs = <double*> realloc(self.cxs, self.ccap * sizeof(double))
                self.cys = <double*> realloc(self.cys, self.ccap * sizeof(double))
                if self.cts == NULL or self.cxs == NULL or self.cys == NULL:
                    raise MemoryError()
        self.cts[end] = t_ms
        self.cxs[end] = x
        self.cys[end] = y
        self.clen += 1

    def push(self, long long t_ms, double x, double y):
        cdef double min_x, max_x, min_y, max_y, disp
        cdef int i, last
        if self._active:
            min_x = x if x < self._min_x else self._min_x
            max_x = x if x > self._max_x else self._max_x
            min_y = y if y < self._min_y else self._min_y
            max_y = y if y > self._max_y else self._max_y
            disp = max_x - min_x
            if max_y - min_y > disp:
                disp = max_y - min_y
            if disp <= self.dispersion_px:
                self._min_x = min_x
                self._max_x = max_x
                self._min_y = min_y
                self._max_y = max_y
                self._sum_x += x
                self._sum_y += y
                self._n += 1
                self._last_ms = t_ms
                return FIX_NONE
            self._finalize_end()
            self._active = False
            self._n = 0
            self.cstart = 0
            self.clen = 0
            self._append(t_ms, x, y)
            return FIX_BREAK

        self._append(t_ms, x, y)
        while self._candidate_dispersion() > self.dispersion_px:
            self.cstart += 1
            self.clen -= 1
        last = self.cstart + self.clen - 1
        if self.cts[last] - self.cts[self.cstart] < self.min_fixation_ms:
            return FIX_NONE

        self._active = True
        self._n = self.clen
        self._sum_x = 0.0
        self._sum_y = 0.0
        self._min_x = self._max_x = self.cxs[self.cstart]
        self._min_y = self._max_y = self.cys[self.cstart]
        for i in range(self.cstart, self.cstart + self.clen):
            self._sum_x += self.cxs[i]
            self._sum_y += self.cys[i]
            if self.cxs[i] < self._min_x:
                self._min_x = self.cxs[i]
            if self.cxs[i] > self._max_x:
                self._max_x = self.cxs[i]
            if self.cys[i] < self._min_y:
                self._min_y = self.cys[i]
            if self.cys[i] > self._max_y:
                self._max_y = self.cys[i]
        self._start_ms = self.cts[self.cstart]
        self._last_ms = self.cts[last]
        self.fix_start_ms = self._start_ms
        self.fix_cx = self._sum_x / <double> self._n
        self.fix_cy = self._sum_y / <double> self._n
        self.cstart = 0
        self.clen = 0
        return FIX_START

    def close(self):
        if self._active:
            self._finalize_end()
            self.reset()
            return True
        self.reset()
        return False
