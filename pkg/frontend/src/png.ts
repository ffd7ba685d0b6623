/**
 * Minimal PNG writer (and reader, for the tests): 8-bit RGBA, filter 0,
 * tEXt chunks for machine-readable annotations. Only node:zlib is needed.
 */

import { deflateSync, inflateSync } from "node:zlib";

const SIGNATURE = Buffer.from([137, 80, 78, 71, 13, 10, 26, 10]);

const CRC_TABLE: number[] = (() => {
  const table = new Array<number>(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

export function crc32(buf: Buffer): number {
  let c = 0xffffffff;
  for (let i = 0; i < buf.length; i++) {
    c = CRC_TABLE[(c ^ buf[i]) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Buffer): Buffer {
  const len = Buffer.alloc(4);
  len.writeUInt32BE(data.length);
  const body = Buffer.concat([Buffer.from(type, "latin1"), data]);
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(body));
  return Buffer.concat([len, body, crc]);
}

export function encodePng(
  width: number,
  height: number,
  rgba: Uint8Array,
  textChunks: Record<string, string> = {},
): Buffer {
  if (rgba.length !== width * height * 4) {
    throw new Error(`pixel buffer length ${rgba.length} does not match ${width}x${height} RGBA`);
  }
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // RGBA
  const parts = [SIGNATURE, chunk("IHDR", ihdr)];
  for (const [key, value] of Object.entries(textChunks)) {
    parts.push(chunk("tEXt", Buffer.from(`${key}\0${value}`, "latin1")));
  }
  const stride = width * 4;
  const raw = Buffer.alloc((stride + 1) * height);
  for (let y = 0; y < height; y++) {
    raw[y * (stride + 1)] = 0; // filter: none
    raw.set(rgba.subarray(y * stride, (y + 1) * stride), y * (stride + 1) + 1);
  }
  parts.push(chunk("IDAT", deflateSync(raw)));
  parts.push(chunk("IEND", Buffer.alloc(0)));
  return Buffer.concat(parts);
}

export interface PngChunk {
  type: string;
  data: Buffer;
}

export function readChunks(png: Buffer): PngChunk[] {
  if (!png.subarray(0, 8).equals(SIGNATURE)) {
    throw new Error("not a PNG: bad signature");
  }
  const chunks: PngChunk[] = [];
  let off = 8;
  while (off < png.length) {
    const len = png.readUInt32BE(off);
    const type = png.subarray(off + 4, off + 8).toString("latin1");
    const body = png.subarray(off + 4, off + 8 + len);
    const crc = png.readUInt32BE(off + 8 + len);
    if (crc32(body) !== crc) {
      throw new Error(`bad CRC in ${type} chunk`);
    }
    chunks.push({ type, data: Buffer.from(png.subarray(off + 8, off + 8 + len)) });
    off += 12 + len;
  }
  return chunks;
}

export function readTextChunks(png: Buffer): Record<string, string> {
  const out: Record<string, string> = {};
  for (const { type, data } of readChunks(png)) {
    if (type !== "tEXt") continue;
    const sep = data.indexOf(0);
    out[data.subarray(0, sep).toString("latin1")] = data.subarray(sep + 1).toString("latin1");
  }
  return out;
}

export function decodePixels(png: Buffer): { width: number; height: number; rgba: Uint8Array } {
  const chunks = readChunks(png);
  const ihdr = chunks.find((c) => c.type === "IHDR");
  if (!ihdr) throw new Error("missing IHDR");
  const width = ihdr.data.readUInt32BE(0);
  const height = ihdr.data.readUInt32BE(4);
  if (ihdr.data[8] !== 8 || ihdr.data[9] !== 6) {
    throw new Error("reader only handles 8-bit RGBA");
  }
  const idat = Buffer.concat(chunks.filter((c) => c.type === "IDAT").map((c) => c.data));
  const raw = inflateSync(idat);
  const stride = width * 4;
  const rgba = new Uint8Array(width * height * 4);
  for (let y = 0; y < height; y++) {
    if (raw[y * (stride + 1)] !== 0) {
      throw new Error("reader only handles filter type 0");
    }
    rgba.set(raw.subarray(y * (stride + 1) + 1, (y + 1) * (stride + 1)), y * stride);
  }
  return { width, height, rgba };
}
