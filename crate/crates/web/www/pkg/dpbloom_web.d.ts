/* tslint:disable */
/* eslint-disable */

/**
 * The `W` distribution for one filter shape and the budget it implies.
 */
export class Calibration {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly cdf: Float64Array;
    readonly epsilon0: number;
    readonly nQuantile: number;
    readonly p0: number;
    readonly pmf: Float64Array;
}

/**
 * A filter over `size` consecutive integers before and after the bit flips.
 */
export class PrivatizeDemo {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly epsilon0: number;
    readonly flipped: number;
    readonly nQuantile: bigint;
    /**
     * Released bits `g̃`, one byte per bit.
     */
    readonly noisy: Uint8Array;
    /**
     * Ground-truth bits `g`, one byte (0 or 1) per bit.
     */
    readonly original: Uint8Array;
}

/**
 * Private-filter accuracy against `ε`, with the plain filter and the lower
 * bound for comparison.
 */
export class UtilityCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly bound: Float64Array;
    readonly epsilon: Float64Array;
    readonly privateAccuracy: Float64Array;
    readonly standardAccuracy: Float64Array;
}

export function calibrate(m: number, k: number, size: number, epsilon: number, delta: number): Calibration;

export function privatizeDemo(m: number, k: number, size: number, epsilon: number, delta: number, seed: number): PrivatizeDemo;

export function utilityCurve(m: number, k: number, size: number, alpha: number, delta: number, epsilons: Float64Array, queries: number, seed: number): UtilityCurve;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_calibration_free: (a: number, b: number) => void;
    readonly __wbg_privatizedemo_free: (a: number, b: number) => void;
    readonly __wbg_utilitycurve_free: (a: number, b: number) => void;
    readonly calibrate: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly calibration_cdf: (a: number) => [number, number];
    readonly calibration_epsilon0: (a: number) => number;
    readonly calibration_nQuantile: (a: number) => number;
    readonly calibration_p0: (a: number) => number;
    readonly calibration_pmf: (a: number) => [number, number];
    readonly privatizeDemo: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly privatizedemo_epsilon0: (a: number) => number;
    readonly privatizedemo_flipped: (a: number) => number;
    readonly privatizedemo_nQuantile: (a: number) => bigint;
    readonly privatizedemo_noisy: (a: number) => [number, number];
    readonly privatizedemo_original: (a: number) => [number, number];
    readonly utilityCurve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
    readonly utilitycurve_bound: (a: number) => [number, number];
    readonly utilitycurve_epsilon: (a: number) => [number, number];
    readonly utilitycurve_privateAccuracy: (a: number) => [number, number];
    readonly utilitycurve_standardAccuracy: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
