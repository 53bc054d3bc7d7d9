/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_calibration_free: (a: number, b: number) => void;
export const __wbg_privatizedemo_free: (a: number, b: number) => void;
export const __wbg_utilitycurve_free: (a: number, b: number) => void;
export const calibrate: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const calibration_cdf: (a: number) => [number, number];
export const calibration_epsilon0: (a: number) => number;
export const calibration_nQuantile: (a: number) => number;
export const calibration_p0: (a: number) => number;
export const calibration_pmf: (a: number) => [number, number];
export const privatizeDemo: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const privatizedemo_epsilon0: (a: number) => number;
export const privatizedemo_flipped: (a: number) => number;
export const privatizedemo_nQuantile: (a: number) => bigint;
export const privatizedemo_noisy: (a: number) => [number, number];
export const privatizedemo_original: (a: number) => [number, number];
export const utilityCurve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
export const utilitycurve_bound: (a: number) => [number, number];
export const utilitycurve_epsilon: (a: number) => [number, number];
export const utilitycurve_privateAccuracy: (a: number) => [number, number];
export const utilitycurve_standardAccuracy: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_start: () => void;
