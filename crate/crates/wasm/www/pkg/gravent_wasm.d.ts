/* tslint:disable */
/* eslint-disable */

/**
 * One sampled curve: swept values and the matching moments and entanglement.
 */
export class Curve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly c: Float64Array;
    /**
     * Entanglement of formation; NaN where the point could not be computed.
     */
    readonly e: Float64Array;
    /**
     * Start of the sweep after clamping away from the horizon.
     */
    readonly lo: number;
    readonly s: Float64Array;
    readonly xs: Float64Array;
}

/**
 * Horizons and Wigner-angle zeros for a given charge.
 */
export class Radii {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly horizons: Float64Array;
    readonly zeros: Float64Array;
}

/**
 * Spin state at a single parameter point.
 */
export class SpinPoint {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly c: number;
    readonly concurrence: number;
    readonly e: number;
    readonly im: Float64Array;
    /**
     * Real parts of the 4×4 density matrix, row-major.
     */
    readonly re: Float64Array;
    readonly s: number;
}

export function radii(xi2: number): Radii;

export function spinState(xi2: number, z: number, q: number, beta: number, tau_ratio: number, bell: string): SpinPoint;

/**
 * Sweeps `variable` ("q", "tau_ratio" or "z") over `[lo, hi]` with the other
 * parameters fixed. Radial sweeps start just outside the outer horizon.
 */
export function sweep(variable: string, lo: number, hi: number, samples: number, xi2: number, z: number, q: number, beta: number, tau_ratio: number, bell: string): Curve;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curve_free: (a: number, b: number) => void;
    readonly __wbg_radii_free: (a: number, b: number) => void;
    readonly __wbg_spinpoint_free: (a: number, b: number) => void;
    readonly curve_c: (a: number) => [number, number];
    readonly curve_e: (a: number) => [number, number];
    readonly curve_lo: (a: number) => number;
    readonly curve_s: (a: number) => [number, number];
    readonly curve_xs: (a: number) => [number, number];
    readonly radii: (a: number) => [number, number, number];
    readonly radii_horizons: (a: number) => [number, number];
    readonly radii_zeros: (a: number) => [number, number];
    readonly spinState: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly spinpoint_c: (a: number) => number;
    readonly spinpoint_concurrence: (a: number) => number;
    readonly spinpoint_e: (a: number) => number;
    readonly spinpoint_im: (a: number) => [number, number];
    readonly spinpoint_re: (a: number) => [number, number];
    readonly spinpoint_s: (a: number) => number;
    readonly sweep: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number, k: number, l: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
