#pragma once

// Layer primitives with exact backward passes. All activations are (C, H, W)
// row-major flat buffers; weights are (O, C, kh, kw) for conv and (out, in)
// for dense. Backward functions *accumulate* into dw/db/dx so batch gradients
// sum naturally; callers zero the buffers.
//
// Summation order is fixed (ascending c, u, v / input index), so results are
// bit-reproducible run to run.

#include <algorithm>
#include <cstdint>
#include <cstddef>

namespace sonar::nn {

// "Same" zero padding, stride 1: pad_top = (kh-1)/2, pad_left = (kw-1)/2.
// y[o,i,j] = b[o] + sum_{c,u,v} w[o,c,u,v] * x_padded[c, i+u, j+v].
template <typename T>
void conv2d_forward(const T* x, int C, int H, int W, const T* w, const T* b,
                    int O, int kh, int kw, T* y) {
    const int pt = (kh - 1) / 2, pl = (kw - 1) / 2;
    const std::size_t plane = static_cast<std::size_t>(H) * W;
    for (int o = 0; o < O; ++o) {
        T* yo = y + o * plane;
        std::fill(yo, yo + plane, b[o]);
        for (int c = 0; c < C; ++c) {
            const T* xc = x + c * plane;
            const T* wc = w + ((static_cast<std::size_t>(o) * C + c) * kh) * kw;
            for (int u = 0; u < kh; ++u) {
                const int di = u - pt;
                const int i0 = std::max(0, -di), i1 = std::min(H, H - di);
                for (int v = 0; v < kw; ++v) {
                    const int dj = v - pl;
                    const int j0 = std::max(0, -dj), j1 = std::min(W, W - dj);
                    const T wv = wc[u * kw + v];
                    if (wv == T(0)) {
                        // Adding an exact zero is a no-op; keep the fast path
                        // bit-identical to the naive accumulation.
                        continue;
                    }
                    for (int i = i0; i < i1; ++i) {
                        T* yrow = yo + static_cast<std::size_t>(i) * W;
                        const T* xrow = xc + static_cast<std::size_t>(i + di) * W + dj;
                        for (int j = j0; j < j1; ++j) yrow[j] += wv * xrow[j];
                    }
                }
            }
        }
    }
}

// Accumulates dx (if non-null), dw, db (if non-null).
template <typename T>
void conv2d_backward(const T* x, const T* w, const T* dy, int C, int H, int W,
                     int O, int kh, int kw, T* dx, T* dw, T* db) {
    const int pt = (kh - 1) / 2, pl = (kw - 1) / 2;
    const std::size_t plane = static_cast<std::size_t>(H) * W;
    for (int o = 0; o < O; ++o) {
        const T* dyo = dy + o * plane;
        if (db) {
            T acc = 0;
            for (std::size_t k = 0; k < plane; ++k) acc += dyo[k];
            db[o] += acc;
        }
        for (int c = 0; c < C; ++c) {
            const T* xc = x + c * plane;
            T* dxc = dx ? dx + c * plane : nullptr;
            const T* wc = w + ((static_cast<std::size_t>(o) * C + c) * kh) * kw;
            T* dwc = dw + ((static_cast<std::size_t>(o) * C + c) * kh) * kw;
            for (int u = 0; u < kh; ++u) {
                const int di = u - pt;
                const int i0 = std::max(0, -di), i1 = std::min(H, H - di);
                for (int v = 0; v < kw; ++v) {
                    const int dj = v - pl;
                    const int j0 = std::max(0, -dj), j1 = std::min(W, W - dj);
                    const T wv = wc[u * kw + v];
                    T wacc = 0;
                    for (int i = i0; i < i1; ++i) {
                        const T* dyrow = dyo + static_cast<std::size_t>(i) * W;
                        const T* xrow = xc + static_cast<std::size_t>(i + di) * W + dj;
                        T dot = 0;
                        for (int j = j0; j < j1; ++j) dot += dyrow[j] * xrow[j];
                        wacc += dot;
                        if (dxc) {
                            T* dxrow = dxc + static_cast<std::size_t>(i + di) * W + dj;
                            for (int j = j0; j < j1; ++j) dxrow[j] += wv * dyrow[j];
                        }
                    }
                    dwc[u * kw + v] += wacc;
                }
            }
        }
    }
}

template <typename T>
void relu_forward(const T* x, std::size_t n, T* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > T(0) ? x[i] : T(0);
}

// dx = dy where the *pre-activation* input was > 0 (gradient 0 at x == 0).
template <typename T>
void relu_backward(const T* x_pre, const T* dy, std::size_t n, T* dx) {
    for (std::size_t i = 0; i < n; ++i) dx[i] += x_pre[i] > T(0) ? dy[i] : T(0);
}

// 2x2 max pooling, stride 2; odd trailing row/column dropped (floor sizes).
// Ties resolve to the first element in row-major window order. argmax holds
// flat indices into x (one per output element) for the backward route.
template <typename T>
void maxpool2x2_forward(const T* x, int C, int H, int W, T* y, std::int32_t* argmax) {
    const int Ho = H / 2, Wo = W / 2;
    const std::size_t plane = static_cast<std::size_t>(H) * W;
    const std::size_t oplane = static_cast<std::size_t>(Ho) * Wo;
    for (int c = 0; c < C; ++c) {
        const T* xc = x + c * plane;
        T* yc = y + c * oplane;
        std::int32_t* ac = argmax + c * oplane;
        for (int i = 0; i < Ho; ++i) {
            for (int j = 0; j < Wo; ++j) {
                const int r = 2 * i, col = 2 * j;
                std::int32_t best = r * W + col;
                T bv = xc[best];
                const std::int32_t cand[3] = {r * W + col + 1, (r + 1) * W + col,
                                              (r + 1) * W + col + 1};
                for (std::int32_t k : cand) {
                    if (xc[k] > bv) {
                        bv = xc[k];
                        best = k;
                    }
                }
                yc[static_cast<std::size_t>(i) * Wo + j] = bv;
                ac[static_cast<std::size_t>(i) * Wo + j] =
                    static_cast<std::int32_t>(c * plane) + best;
            }
        }
    }
}

// dx accumulates dy at the stored argmax positions; n_out = C*Ho*Wo.
template <typename T>
void maxpool2x2_backward(const std::int32_t* argmax, const T* dy, std::size_t n_out, T* dx) {
    for (std::size_t k = 0; k < n_out; ++k) dx[argmax[k]] += dy[k];
}

// y[o] = b[o] + sum_i w[o, i] * x[i]; w is (out, in) row-major.
template <typename T>
void dense_forward(const T* x, int in, const T* w, const T* b, int out, T* y) {
    for (int o = 0; o < out; ++o) {
        const T* wo = w + static_cast<std::size_t>(o) * in;
        T acc = b[o];
        for (int i = 0; i < in; ++i) acc += wo[i] * x[i];
        y[o] = acc;
    }
}

template <typename T>
void dense_backward(const T* x, const T* w, const T* dy, int in, int out, T* dx,
                    T* dw, T* db) {
    for (int o = 0; o < out; ++o) {
        const T g = dy[o];
        const T* wo = w + static_cast<std::size_t>(o) * in;
        T* dwo = dw + static_cast<std::size_t>(o) * in;
        if (db) db[o] += g;
        for (int i = 0; i < in; ++i) dwo[i] += g * x[i];
        if (dx)
            for (int i = 0; i < in; ++i) dx[i] += g * wo[i];
    }
}

}  // namespace sonar::nn
