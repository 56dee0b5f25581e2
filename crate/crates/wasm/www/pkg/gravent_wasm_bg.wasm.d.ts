/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curve_free: (a: number, b: number) => void;
export const __wbg_radii_free: (a: number, b: number) => void;
export const __wbg_spinpoint_free: (a: number, b: number) => void;
export const curve_c: (a: number) => [number, number];
export const curve_e: (a: number) => [number, number];
export const curve_lo: (a: number) => number;
export const curve_s: (a: number) => [number, number];
export const curve_xs: (a: number) => [number, number];
export const radii: (a: number) => [number, number, number];
export const radii_horizons: (a: number) => [number, number];
export const radii_zeros: (a: number) => [number, number];
export const spinState: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const spinpoint_c: (a: number) => number;
export const spinpoint_concurrence: (a: number) => number;
export const spinpoint_e: (a: number) => number;
export const spinpoint_im: (a: number) => [number, number];
export const spinpoint_re: (a: number) => [number, number];
export const spinpoint_s: (a: number) => number;
export const sweep: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number, k: number, l: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
