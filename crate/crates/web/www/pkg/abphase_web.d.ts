/* tslint:disable */
/* eslint-disable */

export function finite_cage_scan(phi_i: number, phi_f: number, max_over_pi: number, steps: number): string;

export function obstruction(kind: string, phi_i: number, phi_f: number, turns: number): string;

export function phase_curve(kind: string, phi_i: number, phi_f_max: number, steps: number, turns: number): string;

export function surface_slices(kind: string, strategy: string, phi_i: number, phi_f: number, turns: number, n_slices: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly finite_cage_scan: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly obstruction: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly phase_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly surface_slices: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
