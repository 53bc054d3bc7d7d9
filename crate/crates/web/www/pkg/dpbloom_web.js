/* @ts-self-types="./dpbloom_web.d.ts" */

/**
 * The `W` distribution for one filter shape and the budget it implies.
 */
export class Calibration {
    static __wrap(ptr) {
        const obj = Object.create(Calibration.prototype);
        obj.__wbg_ptr = ptr;
        CalibrationFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        CalibrationFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_calibration_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    get cdf() {
        const ret = wasm.calibration_cdf(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get epsilon0() {
        const ret = wasm.calibration_epsilon0(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get nQuantile() {
        const ret = wasm.calibration_nQuantile(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get p0() {
        const ret = wasm.calibration_p0(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get pmf() {
        const ret = wasm.calibration_pmf(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) Calibration.prototype[Symbol.dispose] = Calibration.prototype.free;

/**
 * A filter over `size` consecutive integers before and after the bit flips.
 */
export class PrivatizeDemo {
    static __wrap(ptr) {
        const obj = Object.create(PrivatizeDemo.prototype);
        obj.__wbg_ptr = ptr;
        PrivatizeDemoFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        PrivatizeDemoFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_privatizedemo_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get epsilon0() {
        const ret = wasm.privatizedemo_epsilon0(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get flipped() {
        const ret = wasm.privatizedemo_flipped(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {bigint}
     */
    get nQuantile() {
        const ret = wasm.privatizedemo_nQuantile(this.__wbg_ptr);
        return BigInt.asUintN(64, ret);
    }
    /**
     * Released bits `g̃`, one byte per bit.
     * @returns {Uint8Array}
     */
    get noisy() {
        const ret = wasm.privatizedemo_noisy(this.__wbg_ptr);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * Ground-truth bits `g`, one byte (0 or 1) per bit.
     * @returns {Uint8Array}
     */
    get original() {
        const ret = wasm.privatizedemo_original(this.__wbg_ptr);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
}
if (Symbol.dispose) PrivatizeDemo.prototype[Symbol.dispose] = PrivatizeDemo.prototype.free;

/**
 * Private-filter accuracy against `ε`, with the plain filter and the lower
 * bound for comparison.
 */
export class UtilityCurve {
    static __wrap(ptr) {
        const obj = Object.create(UtilityCurve.prototype);
        obj.__wbg_ptr = ptr;
        UtilityCurveFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        UtilityCurveFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_utilitycurve_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    get bound() {
        const ret = wasm.utilitycurve_bound(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get epsilon() {
        const ret = wasm.utilitycurve_epsilon(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get privateAccuracy() {
        const ret = wasm.utilitycurve_privateAccuracy(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get standardAccuracy() {
        const ret = wasm.utilitycurve_standardAccuracy(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) UtilityCurve.prototype[Symbol.dispose] = UtilityCurve.prototype.free;

/**
 * @param {number} m
 * @param {number} k
 * @param {number} size
 * @param {number} epsilon
 * @param {number} delta
 * @returns {Calibration}
 */
export function calibrate(m, k, size, epsilon, delta) {
    const ret = wasm.calibrate(m, k, size, epsilon, delta);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Calibration.__wrap(ret[0]);
}

/**
 * @param {number} m
 * @param {number} k
 * @param {number} size
 * @param {number} epsilon
 * @param {number} delta
 * @param {number} seed
 * @returns {PrivatizeDemo}
 */
export function privatizeDemo(m, k, size, epsilon, delta, seed) {
    const ret = wasm.privatizeDemo(m, k, size, epsilon, delta, seed);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return PrivatizeDemo.__wrap(ret[0]);
}

/**
 * @param {number} m
 * @param {number} k
 * @param {number} size
 * @param {number} alpha
 * @param {number} delta
 * @param {Float64Array} epsilons
 * @param {number} queries
 * @param {number} seed
 * @returns {UtilityCurve}
 */
export function utilityCurve(m, k, size, alpha, delta, epsilons, queries, seed) {
    const ptr0 = passArrayF64ToWasm0(epsilons, wasm.__wbindgen_malloc);
    const len0 = WASM_VECTOR_LEN;
    const ret = wasm.utilityCurve(m, k, size, alpha, delta, ptr0, len0, queries, seed);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return UtilityCurve.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./dpbloom_web_bg.js": import0,
    };
}

const CalibrationFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_calibration_free(ptr, 1));
const PrivatizeDemoFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_privatizedemo_free(ptr, 1));
const UtilityCurveFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_utilitycurve_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

function getArrayU8FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getUint8ArrayMemory0().subarray(ptr / 1, ptr / 1 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function passArrayF64ToWasm0(arg, malloc) {
    const ptr = malloc(arg.length * 8, 8) >>> 0;
    getFloat64ArrayMemory0().set(arg, ptr / 8);
    WASM_VECTOR_LEN = arg.length;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('dpbloom_web_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
