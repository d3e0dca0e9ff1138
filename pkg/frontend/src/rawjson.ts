// JSON parser that keeps every number's exact source text.
//
// JSON.parse hands the application a double, and printing a double can
// produce different bytes than the server sent (trailing zeros, e vs E,
// exponent forms).  Since the display contract is "show the payload
// bytes", numbers are wrapped as { raw, num } at parse time instead of
// being re-formatted later.  The grammar below is plain RFC 8259.

import type { Num } from "./types.js";

export type RawValue =
  | Num
  | string
  | boolean
  | null
  | RawValue[]
  | { [key: string]: RawValue };

const WS = new Set([" ", "\t", "\n", "\r"]);

class Scanner {
  pos = 0;

  constructor(private readonly text: string) {}

  error(message: string): never {
    throw new SyntaxError(`${message} at position ${this.pos}`);
  }

  peek(): string {
    return this.text[this.pos] ?? "";
  }

  skipWs(): void {
    while (WS.has(this.text[this.pos] ?? "")) this.pos++;
  }

  expect(ch: string): void {
    if (this.text[this.pos] !== ch) this.error(`expected '${ch}'`);
    this.pos++;
  }

  literal(word: string): void {
    if (this.text.startsWith(word, this.pos)) {
      this.pos += word.length;
      return;
    }
    this.error(`expected '${word}'`);
  }

  string(): string {
    this.expect('"');
    let out = "";
    for (;;) {
      const ch = this.text[this.pos];
      if (ch === undefined) this.error("unterminated string");
      this.pos++;
      if (ch === '"') return out;
      if (ch !== "\\") {
        out += ch;
        continue;
      }
      const esc = this.text[this.pos];
      if (esc === undefined) this.error("unterminated escape");
      this.pos++;
      switch (esc) {
        case '"': out += '"'; break;
        case "\\": out += "\\"; break;
        case "/": out += "/"; break;
        case "b": out += "\b"; break;
        case "f": out += "\f"; break;
        case "n": out += "\n"; break;
        case "r": out += "\r"; break;
        case "t": out += "\t"; break;
        case "u": {
          const hex = this.text.slice(this.pos, this.pos + 4);
          if (!/^[0-9a-fA-F]{4}$/.test(hex)) this.error("bad \\u escape");
          out += String.fromCharCode(parseInt(hex, 16));
          this.pos += 4;
          break;
        }
        default:
          this.error(`bad escape '\\${esc}'`);
      }
    }
  }

  number(): Num {
    const start = this.pos;
    if (this.peek() === "-") this.pos++;
    if (this.peek() === "0") {
      this.pos++;
    } else if (/[1-9]/.test(this.peek())) {
      while (/[0-9]/.test(this.peek())) this.pos++;
    } else {
      this.error("bad number");
    }
    if (this.peek() === ".") {
      this.pos++;
      if (!/[0-9]/.test(this.peek())) this.error("bad fraction");
      while (/[0-9]/.test(this.peek())) this.pos++;
    }
    if (this.peek() === "e" || this.peek() === "E") {
      this.pos++;
      if (this.peek() === "+" || this.peek() === "-") this.pos++;
      if (!/[0-9]/.test(this.peek())) this.error("bad exponent");
      while (/[0-9]/.test(this.peek())) this.pos++;
    }
    const raw = this.text.slice(start, this.pos);
    return { raw, num: Number(raw) };
  }

  value(): RawValue {
    this.skipWs();
    const ch = this.peek();
    if (ch === "{") return this.object();
    if (ch === "[") return this.array();
    if (ch === '"') return this.string();
    if (ch === "t") { this.literal("true"); return true; }
    if (ch === "f") { this.literal("false"); return false; }
    if (ch === "n") { this.literal("null"); return null; }
    if (ch === "-" || /[0-9]/.test(ch)) return this.number();
    this.error("unexpected character");
  }

  object(): { [key: string]: RawValue } {
    this.expect("{");
    const out: { [key: string]: RawValue } = {};
    this.skipWs();
    if (this.peek() === "}") { this.pos++; return out; }
    for (;;) {
      this.skipWs();
      const key = this.string();
      this.skipWs();
      this.expect(":");
      out[key] = this.value();
      this.skipWs();
      if (this.peek() === ",") { this.pos++; continue; }
      this.expect("}");
      return out;
    }
  }

  array(): RawValue[] {
    this.expect("[");
    const out: RawValue[] = [];
    this.skipWs();
    if (this.peek() === "]") { this.pos++; return out; }
    for (;;) {
      out.push(this.value());
      this.skipWs();
      if (this.peek() === ",") { this.pos++; continue; }
      this.expect("]");
      return out;
    }
  }
}

/** Parse a complete JSON document, wrapping numbers as { raw, num }. */
export function parseRaw(text: string): RawValue {
  const scanner = new Scanner(text);
  const result = scanner.value();
  scanner.skipWs();
  if (scanner.pos !== text.length) scanner.error("trailing content");
  return result;
}

export function isNum(value: RawValue): value is Num {
  return (
    typeof value === "object" &&
    value !== null &&
    !Array.isArray(value) &&
    typeof (value as { raw?: unknown }).raw === "string" &&
    typeof (value as { num?: unknown }).num === "number"
  );
}
